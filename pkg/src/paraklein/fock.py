"""Order-p Fock representations on a truncated occupation-number space.

The para-operators are built as Green-ansatz sums over ``p`` components of
ordinary fermion and boson modes, each component dressed by a diagonal sign
operator. Within a component, bare fermions and bosons anticommute; across
components fermion pairs commute, boson pairs anticommute and
fermion-boson pairs commute.

Bosons use the divided-power basis: creation has unit entries, annihilation
on occupation ``r`` has entry ``r``. Every para-operator matrix is therefore
integral, and hermiticity becomes a transpose twisted by the diagonal
weight ``prod(r!)``.

The boson space is cut at a total occupation ``boson_cutoff``. Identities of
boson degree ``d`` are only checked on columns whose boson total is at most
``boson_cutoff - d``; on those columns the truncated operators act exactly as
the untruncated ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, lcm
from typing import Iterable

from .algebra import Expression, Generator, Kind, Word, generators
from .errors import ConfigurationError, ConstructionError, EvaluationError
from .relations import RelationInstance
from .sparse import SparseMatrix

__all__ = [
    "ModeSpec",
    "BasisState",
    "Representation",
    "CheckResult",
    "build_basis",
    "build_representation",
    "bare_mode",
    "klein_factor",
    "para_operator",
    "evaluate",
    "check_relation",
    "adjoint_check",
    "vacuum_checks",
    "ladder_checks",
    "klein_checks",
    "cyclic_subspace",
    "parse_operator_name",
    "DEFAULT_DIMENSION_CAP",
    "MUTATIONS",
]

DEFAULT_DIMENSION_CAP = 200_000

# deliberate construction defects used to test that the checks can fail
MUTATIONS = ("no_fb_dressing", "unsigned_tilde", "trivial_klein")


@dataclass(frozen=True)
class ModeSpec:
    m: int
    n: int
    p: int
    boson_cutoff: int = 0

    def __post_init__(self):
        for name in ("m", "n", "p", "boson_cutoff"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise ConfigurationError(f"{name} must be an integer, got {v!r}")
        if self.m < 0 or self.n < 0 or self.m + self.n < 1:
            raise ConfigurationError(f"need m, n >= 0 and m + n >= 1, got m={self.m}, n={self.n}")
        if self.p < 1:
            raise ConfigurationError(f"order p must be >= 1, got {self.p}")
        if self.boson_cutoff < 0:
            raise ConfigurationError("boson_cutoff must be >= 0")

    @property
    def fermion_modes(self) -> int:
        return self.m * self.p

    @property
    def boson_modes(self) -> int:
        return self.n * self.p

    def dimension(self) -> int:
        bos = comb(self.boson_cutoff + self.boson_modes, self.boson_modes)
        return 2**self.fermion_modes * bos

    def require_suite_cutoff(self) -> None:
        """Relation suites need headroom for cubic boson words."""
        if self.n > 0 and self.boson_cutoff < 3:
            raise ConfigurationError(
                f"boson_cutoff must be >= 3 when n > 0 (got {self.boson_cutoff})"
            )


@dataclass(frozen=True)
class BasisState:
    fermions: tuple[int, ...]
    bosons: tuple[int, ...]

    @property
    def boson_total(self) -> int:
        return sum(self.bosons)

    @property
    def total(self) -> int:
        return sum(self.fermions) + sum(self.bosons)

    def render(self) -> str:
        return f"f={''.join(map(str, self.fermions))} b={','.join(map(str, self.bosons))}"


def fermion_mode(spec: ModeSpec, j: int, a: int) -> int:
    # component-major: (a=1, j=1..m), (a=2, j=1..m), ...
    return (a - 1) * spec.m + (j - 1)


def boson_mode(spec: ModeSpec, k: int, a: int) -> int:
    return (a - 1) * spec.n + (k - 1)


def _boson_vectors(modes: int, cutoff: int) -> list[tuple[int, ...]]:
    vecs = []
    for total in range(cutoff + 1):
        level = [
            v
            for v in itertools.product(range(total + 1), repeat=modes)
            if sum(v) == total
        ]
        vecs.extend(sorted(level))
    return vecs if modes else [()]


def build_basis(spec: ModeSpec, dimension_cap: int = DEFAULT_DIMENSION_CAP) -> list[BasisState]:
    """Fermion bit vectors (lexicographic, outer) crossed with boson vectors (graded, inner)."""
    dim = spec.dimension()
    if dim > dimension_cap:
        raise ConfigurationError(f"dimension {dim} exceeds cap {dimension_cap}")
    bos = _boson_vectors(spec.boson_modes, spec.boson_cutoff)
    return [
        BasisState(fbits, bvec)
        for fbits in itertools.product((0, 1), repeat=spec.fermion_modes)
        for bvec in bos
    ]


@dataclass(frozen=True)
class CheckResult:
    id: str
    passed: bool
    safe_columns: int
    failure: dict | None = None

    def to_dict(self) -> dict:
        d = {"id": self.id, "status": "pass" if self.passed else "fail", "safeColumns": self.safe_columns}
        if self.failure is not None:
            d["failure"] = self.failure
        return d


@dataclass(eq=False)
class Representation:
    spec: ModeSpec
    basis: list[BasisState]
    vacuum_index: int
    ops: dict[Generator, SparseMatrix]
    tilde_ops: dict[Generator, SparseMatrix]
    H: SparseMatrix
    N: SparseMatrix
    K: SparseMatrix
    weight: list[int]
    mutation: str | None = None
    _index: dict[BasisState, int] = field(default_factory=dict, repr=False)
    _words: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index_of(self, state: BasisState) -> int:
        return self._index[state]

    def safe_columns(self, degree: int) -> list[int]:
        if self.spec.n == 0:
            return list(range(self.dim))
        limit = self.spec.boson_cutoff - degree
        return [i for i, s in enumerate(self.basis) if s.boson_total <= limit]

    def operator(self, g: Generator, tilde: bool = False) -> SparseMatrix:
        table = self.tilde_ops if tilde else self.ops
        try:
            return table[g]
        except KeyError:
            raise EvaluationError(
                f"generator {g.token()} outside m={self.spec.m}, n={self.spec.n}"
            ) from None

    def word_matrix(self, word: Word, tilde: bool = False) -> SparseMatrix:
        key = (word, tilde)
        hit = self._words.get(key)
        if hit is not None:
            return hit
        if not word.letters:
            mat = self.K if word.klein else SparseMatrix.identity(self.dim)
        else:
            rest = self.word_matrix(Word(word.letters[1:], word.klein), tilde)
            mat = self.operator(word.letters[0], tilde) @ rest
        self._words[key] = mat
        return mat

    def describe(self, i: int) -> str:
        return f"{i} : {self.basis[i].render()} N={self.N[i, i]}"

    def dump_basis(self) -> str:
        return "".join(self.describe(i) + "\n" for i in range(self.dim))


def _dressing_exponent(spec: ModeSpec, state: BasisState, kind: Kind, a: int, fb: bool) -> int:
    if kind is Kind.FERMION:
        e = sum(state.fermions[fermion_mode(spec, j, c)] for c in range(1, a) for j in range(1, spec.m + 1))
        if fb:
            e += sum(state.bosons[boson_mode(spec, k, a)] for k in range(1, spec.n + 1))
        return e
    return sum(state.bosons[boson_mode(spec, k, c)] for c in range(1, a) for k in range(1, spec.n + 1))


def klein_factor(kind: Kind, component: int, rep: Representation) -> SparseMatrix:
    """Diagonal +-1 dressing for component ``component`` of a given kind."""
    fb = rep.mutation != "no_fb_dressing"
    return _klein_factor(rep.spec, rep.basis, kind, component, fb)


def _klein_factor(spec, basis, kind, a, fb=True) -> SparseMatrix:
    if not 1 <= a <= spec.p:
        raise ValueError(f"component {a} outside 1..{spec.p}")
    return SparseMatrix.diagonal(
        -1 if _dressing_exponent(spec, s, Kind(kind), a, fb) % 2 else 1 for s in basis
    )


def _bare_entries(spec, basis, index, kind, species, a, sign):
    """(row, col, value) of one ordinary mode operator."""
    for col, s in enumerate(basis):
        if kind is Kind.FERMION:
            pos = fermion_mode(spec, species, a)
            occ = s.fermions[pos]
            if occ == (1 if sign > 0 else 0):
                continue
            bits = list(s.fermions)
            bits[pos] = 1 - occ
            jw = -1 if sum(s.fermions[:pos]) % 2 else 1
            yield index[BasisState(tuple(bits), s.bosons)], col, jw
        else:
            pos = boson_mode(spec, species, a)
            r = s.bosons[pos]
            occ = list(s.bosons)
            if sign > 0:
                if s.boson_total >= spec.boson_cutoff:
                    continue
                occ[pos] = r + 1
                yield index[BasisState(s.fermions, tuple(occ))], col, 1
            else:
                if r == 0:
                    continue
                occ[pos] = r - 1
                yield index[BasisState(s.fermions, tuple(occ))], col, r


def _check_species(spec: ModeSpec, kind: Kind, species: int) -> None:
    size = spec.m if kind is Kind.FERMION else spec.n
    if not 1 <= species <= size:
        raise EvaluationError(f"{kind.name.lower()} species {species} outside 1..{size}")


def bare_mode(kind: Kind, species: int, component: int, sign: int, rep: Representation) -> SparseMatrix:
    """Ordinary creation (sign=+1) or annihilation (sign=-1) operator of one mode."""
    kind = Kind(kind)
    _check_species(rep.spec, kind, species)
    if not 1 <= component <= rep.spec.p:
        raise ValueError(f"component {component} outside 1..{rep.spec.p}")
    return SparseMatrix.from_entries(
        rep.dim, _bare_entries(rep.spec, rep.basis, rep._index, kind, species, component, sign)
    )


def _para_operator(spec, basis, index, kind, species, sign, fb=True) -> SparseMatrix:
    ents = []
    for a in range(1, spec.p + 1):
        for r, c, v in _bare_entries(spec, basis, index, kind, species, a, sign):
            d = -1 if _dressing_exponent(spec, basis[c], kind, a, fb) % 2 else 1
            ents.append((r, c, v * d))
    return SparseMatrix.from_entries(len(basis), ents)


def para_operator(kind: Kind, species: int, sign: int, rep: Representation) -> SparseMatrix:
    """``f_j^sign`` or ``b_k^sign`` as the dressed sum over Green components."""
    return rep.operator(Generator(Kind(kind), species, sign))


def _h_matrix(ops: dict[Generator, SparseMatrix], spec: ModeSpec) -> SparseMatrix:
    dim = next(iter(ops.values())).dim
    H = SparseMatrix.zero(dim)
    half = Fraction(1, 2)
    for j in range(1, spec.m + 1):
        lo, hi = ops[Generator(Kind.FERMION, j, -1)], ops[Generator(Kind.FERMION, j, 1)]
        H = H + (lo @ hi - hi @ lo).scale(-half)
    for k in range(1, spec.n + 1):
        lo, hi = ops[Generator(Kind.BOSON, k, -1)], ops[Generator(Kind.BOSON, k, 1)]
        H = H + (lo @ hi + hi @ lo).scale(half)
    return H


def build_representation(
    spec: ModeSpec,
    dimension_cap: int = DEFAULT_DIMENSION_CAP,
    mutation: str | None = None,
) -> Representation:
    if mutation is not None and mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}")
    basis = build_basis(spec, dimension_cap)
    index = {s: i for i, s in enumerate(basis)}
    fb = mutation != "no_fb_dressing"
    ops = {
        g: _para_operator(spec, basis, index, g.kind, g.index, g.sign, fb)
        for g in generators(spec.m, spec.n)
    }

    shift = Fraction(spec.p * (spec.m - spec.n), 2)
    n_diag = [s.total for s in basis]
    N = SparseMatrix.diagonal(n_diag)
    H = SparseMatrix.diagonal(v - shift for v in n_diag)

    # H assembled from the para-operators must agree with the closed form
    # wherever truncation cannot interfere (one spare boson quantum).
    H_raw = _h_matrix(ops, spec)
    for c in range(len(basis)):
        if basis[c].boson_total > spec.boson_cutoff - 1:
            continue
        col = H_raw.cols.get(c, {})
        if set(col) - {c}:
            raise ConstructionError(f"H is not diagonal in column {c}")
        if col.get(c, 0) != n_diag[c] - shift:
            raise ConstructionError(
                f"H[{c},{c}] = {col.get(c, 0)}, expected {n_diag[c] - shift}"
            )

    if mutation == "trivial_klein":
        Kmat = SparseMatrix.identity(len(basis))
    else:
        Kmat = SparseMatrix.diagonal(-1 if v % 2 else 1 for v in n_diag)

    tilde = {}
    for g, mat in ops.items():
        if g.kind is Kind.FERMION:
            sgn = 1 if mutation == "unsigned_tilde" else g.sign
            tilde[g] = (mat @ Kmat).scale(sgn)
        else:
            tilde[g] = mat

    weight = [1] * len(basis)
    for i, s in enumerate(basis):
        w = 1
        for r in s.bosons:
            w *= factorial(r)
        weight[i] = w

    return Representation(
        spec=spec,
        basis=basis,
        vacuum_index=0,
        ops=ops,
        tilde_ops=tilde,
        H=H,
        N=N,
        K=Kmat,
        weight=weight,
        mutation=mutation,
        _index=index,
    )


def operator_H(rep: Representation) -> SparseMatrix:
    return rep.H


def operator_N(rep: Representation) -> SparseMatrix:
    return rep.N


def operator_K(rep: Representation) -> SparseMatrix:
    return rep.K


def tilde_operators(rep: Representation) -> dict[Generator, SparseMatrix]:
    return dict(rep.tilde_ops)


def evaluate(
    e: Expression, rep: Representation, tilde: bool = False, columns: Iterable[int] | None = None
) -> SparseMatrix:
    """Interpret ``e`` with generators replaced by the (tilde) operator matrices.

    ``columns`` limits the computation to a subset of columns.
    """
    keep = None if columns is None else set(columns)
    # clear denominators so the accumulation runs on ints
    scale = lcm(*(c.denominator for c in e.values())) if len(e) else 1
    acc: dict[int, dict[int, int]] = {}
    for word, coeff in e.items():
        k = int(coeff * scale)
        for c, col in rep.word_matrix(word, tilde).cols.items():
            if keep is not None and c not in keep:
                continue
            tgt = acc.setdefault(c, {})
            for r, v in col.items():
                tgt[r] = tgt.get(r, 0) + k * v
    if scale != 1:
        acc = {c: {r: Fraction(v, scale) for r, v in col.items()} for c, col in acc.items()}
    return SparseMatrix(rep.dim, acc)


def _first_failure(mat: SparseMatrix, columns: Iterable[int], rep: Representation) -> dict | None:
    for c in sorted(columns):
        col = mat.cols.get(c)
        if col:
            r = min(col)
            return {
                "row": r,
                "col": c,
                "value": str(Fraction(col[r])),
                "rowState": rep.basis[r].render(),
                "colState": rep.basis[c].render(),
            }
    return None


def _safe_or_raise(rep: Representation, degree: int, label: str) -> list[int]:
    cols = rep.safe_columns(degree)
    if not cols:
        raise ConfigurationError(
            f"{label}: no safe columns (boson_cutoff={rep.spec.boson_cutoff}, degree={degree})"
        )
    return cols


def check_relation(inst: RelationInstance, rep: Representation) -> CheckResult:
    """Evaluate a relation and require it to vanish on every safe column.

    Tilde parts are evaluated on the tilde matrices; plain parts and unreduced
    products on the original operators. When a tilde part is present, the pull-back
    ``inst.expr`` is also evaluated on the original operators.
    """
    cols = _safe_or_raise(rep, inst.boson_degree, inst.id)
    mat = evaluate(inst.plain, rep, columns=cols)
    for coeff, factors in inst.products:
        prod = SparseMatrix.identity(rep.dim).restrict_columns(cols)
        for x in reversed(factors):
            prod = evaluate(x, rep) @ prod
        mat = mat + prod.scale(coeff)
    if not inst.tilde.is_zero():
        mat = mat + evaluate(inst.tilde, rep, tilde=True, columns=cols)
    failure = _first_failure(mat, cols, rep)
    if failure is None and not inst.tilde.is_zero():
        failure = _first_failure(evaluate(inst.expr, rep, columns=cols), cols, rep)
        if failure is not None:
            failure["route"] = "klein"
    return CheckResult(inst.id, failure is None, len(cols), failure)


def _op_name(g: Generator, tilde: bool) -> str:
    return ("t" if tilde else "") + g.token()


def adjoint_check(rep: Representation) -> list[CheckResult]:
    """``W^-1 (X^+)^T W == X^-`` on states with at least one spare boson quantum."""
    cols = _safe_or_raise(rep, 1, "ADJOINT")
    safe = set(cols)
    W = rep.weight
    out = []
    for tilde in (False, True):
        for g in generators(rep.spec.m, rep.spec.n):
            if g.sign < 0:
                continue
            up = rep.operator(g, tilde)
            down = rep.operator(g.adjoint(), tilde)
            failure = None
            expected: dict[tuple[int, int], Fraction] = {}
            for r, c, v in up.entries():
                # (X^+)^T has v at (c, r)
                if r in safe and c in safe:
                    expected[(c, r)] = Fraction(W[r] * v, W[c])
            actual = {
                (r, c): Fraction(v) for r, c, v in down.entries() if r in safe and c in safe
            }
            if expected != actual:
                bad = sorted(set(expected) ^ set(actual) | {
                    k for k in expected.keys() & actual.keys() if expected[k] != actual[k]
                })[0]
                failure = {
                    "row": bad[0],
                    "col": bad[1],
                    "expected": str(expected.get(bad, 0)),
                    "value": str(actual.get(bad, 0)),
                }
            out.append(CheckResult(f"ADJOINT:{_op_name(g, tilde)}", failure is None, len(cols), failure))
    return out


def _vec_result(label: str, got: dict, want: dict) -> CheckResult:
    got = {k: Fraction(v) for k, v in got.items() if v != 0}
    want = {k: Fraction(v) for k, v in want.items() if v != 0}
    failure = None
    if got != want:
        failure = {"got": {str(k): str(v) for k, v in sorted(got.items())},
                   "expected": {str(k): str(v) for k, v in sorted(want.items())}}
    return CheckResult(label, failure is None, 1, failure)


def vacuum_checks(rep: Representation) -> list[CheckResult]:
    """Annihilation and p-scaled bracket conditions on the vacuum."""
    spec, v0 = rep.spec, rep.vacuum_index
    vac = {v0: 1}
    out = []
    for kind, size, anti in ((Kind.FERMION, spec.m, False), (Kind.BOSON, spec.n, True)):
        letter = "f" if kind is Kind.FERMION else "b"
        for j in range(1, size + 1):
            lo = rep.operator(Generator(kind, j, -1))
            out.append(_vec_result(f"VACUUM[{letter}-]:{j}", lo.apply(vac), {}))
        for j, k in itertools.product(range(1, size + 1), repeat=2):
            lo = rep.operator(Generator(kind, j, -1))
            hi = rep.operator(Generator(kind, k, 1))
            a = lo.apply(hi.apply(vac))
            bvec = hi.apply(lo.apply(vac))
            sgn = 1 if anti else -1
            got = {i: a.get(i, 0) + sgn * bvec.get(i, 0) for i in set(a) | set(bvec)}
            want = {v0: spec.p} if j == k else {}
            out.append(_vec_result(f"VACUUM[{letter}{letter}]:{j},{k}", got, want))
    return out


def ladder_checks(rep: Representation) -> list[CheckResult]:
    """``N X^s - X^s (N + s) == 0`` for every operator and its tilde."""
    cols = _safe_or_raise(rep, 1, "LADDER")
    ident = SparseMatrix.identity(rep.dim)
    out = []
    for tilde in (False, True):
        for g in generators(rep.spec.m, rep.spec.n):
            X = rep.operator(g, tilde)
            resid = rep.N @ X - X @ (rep.N + ident.scale(g.sign))
            failure = _first_failure(resid, cols, rep)
            out.append(CheckResult(f"LADDER:{_op_name(g, tilde)}", failure is None, len(cols), failure))
    return out


def klein_checks(rep: Representation) -> list[CheckResult]:
    """Matrix-level properties of N, H and K."""
    spec, dim, v0 = rep.spec, rep.dim, rep.vacuum_index
    out = []

    def add(label, ok, detail=None):
        out.append(CheckResult(label, ok, dim, None if ok else {"detail": detail}))

    nd = rep.N.diag()
    add(
        "KLEIN_OP:N_diagonal",
        rep.N.is_diagonal() and all(isinstance(v, int) and v >= 0 for v in nd),
        "N is not a nonnegative integer diagonal",
    )
    add("KLEIN_OP:N_vacuum", rep.N[v0, v0] == 0, f"N|0> = {rep.N[v0, v0]}|0>")
    kd = rep.K.diag()
    add(
        "KLEIN_OP:K_parity",
        rep.K.is_diagonal() and all(k == (-1) ** v for k, v in zip(kd, nd)),
        "K differs from (-1)^N",
    )
    add("KLEIN_OP:K_squared", rep.K @ rep.K == SparseMatrix.identity(dim), "K^2 != 1")
    add("KLEIN_OP:K_vacuum", rep.K.apply({v0: 1}) == {v0: 1}, "K|0> != |0>")
    want = -Fraction(spec.p * (spec.m - spec.n), 2)
    add("KLEIN_OP:H_vacuum", rep.H.apply({v0: 1}) == ({v0: want} if want else {}),
        f"H|0> != {want}|0>")
    for g in generators(spec.m, spec.n):
        X = rep.operator(g)
        add(f"KLEIN_OP:anti:{g.token()}", (rep.K @ X + X @ rep.K).is_zero(),
            f"K does not anticommute with {g.token()}")
    return out


# cyclic subspace


def _reduce(vec: dict[int, Fraction], echelon: dict[int, dict[int, Fraction]]) -> dict[int, Fraction]:
    vec = {k: Fraction(v) for k, v in vec.items() if v != 0}
    while vec:
        pivot = min(vec)
        row = echelon.get(pivot)
        if row is None:
            return vec
        coef = vec[pivot] / row[pivot]
        for k, v in row.items():
            nv = vec.get(k, 0) - coef * v
            if nv:
                vec[k] = nv
            else:
                vec.pop(k, None)
    return vec


def cyclic_subspace(rep: Representation, max_level: int, tilde: bool = False) -> dict[int, int]:
    """Dimensions, per eigenvalue of N, of the span of words of length <= max_level on the vacuum.

    Only levels up to ``boson_cutoff`` are free of truncation effects.
    """
    if max_level < 0:
        raise ValueError("max_level must be >= 0")
    gens = [rep.operator(g, tilde) for g in generators(rep.spec.m, rep.spec.n)]
    nd = rep.N.diag()
    echelons: dict[int, dict[int, dict[int, Fraction]]] = {}

    def insert(vec) -> dict | None:
        if not vec:
            return None
        level = nd[next(iter(vec))]
        ech = echelons.setdefault(level, {})
        red = _reduce(vec, ech)
        if not red:
            return None
        ech[min(red)] = red
        return red

    frontier = [insert({rep.vacuum_index: Fraction(1)})]
    for _ in range(max_level):
        nxt = []
        for v in frontier:
            for G in gens:
                added = insert(G.apply(v))
                if added is not None:
                    nxt.append(added)
        if not nxt:
            break
        frontier = nxt
    return {lvl: len(ech) for lvl, ech in sorted(echelons.items())}


def parse_operator_name(token: str, rep: Representation) -> SparseMatrix:
    """Resolve ``f+1``, ``b-2``, ``tf+1``, ``tb-1``, ``K``, ``H`` or ``N``."""
    fixed = {"K": rep.K, "H": rep.H, "N": rep.N}
    if token in fixed:
        return fixed[token]
    tilde = token.startswith("t")
    body = token[1:] if tilde else token
    if len(body) < 3 or body[0] not in "fb" or body[1] not in "+-" or not body[2:].isdigit():
        raise ConfigurationError(f"unknown operator name {token!r}")
    kind = Kind.FERMION if body[0] == "f" else Kind.BOSON
    g = Generator(kind, int(body[2:]), 1 if body[1] == "+" else -1)
    try:
        return rep.operator(g, tilde)
    except EvaluationError as exc:
        raise ConfigurationError(str(exc)) from None
