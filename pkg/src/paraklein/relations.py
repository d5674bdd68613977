"""Concrete instances of the defining triple relations and their consequences.

Each :class:`RelationInstance` carries two parts:

``tilde``
    the part written in Klein-transformed operators. Evaluating it means
    substituting the tilde matrices for the generators.
``plain``
    the part written in the original operators.

``expr`` is the whole relation pulled back to the original generators
(``klein_transform(tilde) + plain``), which is what symbolic checks inspect.

Relations that the Klein-extended algebra already builds in (``K^2 = 1``,
``{K, g} = 0``) normalize to zero, so they additionally carry ``products``:
unreduced ``(coefficient, factors)`` terms that a representation multiplies
out as matrices.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    K,
    ONE,
    ZERO,
    Expression,
    anticommutator,
    b,
    commutator,
    f,
    klein_transform,
    mul,
)
from .errors import ConfigurationError

__all__ = [
    "RelationFamily",
    "RelationInstance",
    "coeff_abs",
    "coeff_diff",
    "enumerate_family",
    "applicable",
    "ALL_FAMILIES",
    "h_element",
    "H_element",
]

SIGNS = (-1, 1)


class RelationFamily(str, enum.Enum):
    PF = "PF"
    PB = "PB"
    REL_PF = "REL_PF"
    REL_PB_TB = "REL_PB_TB"
    REL_PB_TF = "REL_PB_TF"
    REL_PB_MIXED = "REL_PB_MIXED"
    H_RELS = "H_RELS"
    KLEIN = "KLEIN"
    TILDE_IDENTITY = "TILDE_IDENTITY"

    def __str__(self) -> str:
        return self.value


ALL_FAMILIES = tuple(RelationFamily)

# families whose relations are stated for the Klein-transformed operators
TILDE_FAMILIES = frozenset(
    {RelationFamily.REL_PB_TB, RelationFamily.REL_PB_TF, RelationFamily.REL_PB_MIXED}
)


def _sign_char(s: int) -> str:
    return "+" if s > 0 else "-"


@dataclass(frozen=True)
class RelationInstance:
    family: RelationFamily
    sub: str | None
    indices: tuple[int, ...]
    signs: tuple[int, ...]
    tilde: Expression = ZERO
    plain: Expression = ZERO
    products: tuple[tuple[int, tuple[Expression, ...]], ...] = ()
    expr: Expression = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "expr", klein_transform(self.tilde) + self.plain)

    @property
    def id(self) -> str:
        fam = self.family.value + (f"[{self.sub}]" if self.sub else "")
        idx = ",".join(map(str, self.indices))
        sg = "".join(_sign_char(s) for s in self.signs)
        return f"{fam}:{idx}:{sg}"

    @property
    def boson_degree(self) -> int:
        raw = (sum(x.boson_degree() for x in factors) for _, factors in self.products)
        return max(self.tilde.boson_degree(), self.plain.boson_degree(), *raw)

    def sort_key(self) -> tuple:
        return (ALL_FAMILIES.index(self.family), self.sub or "", self.indices, self.signs)


def coeff_abs(e: int, x: int) -> int:
    """``|e - x|`` for signs in {+1, -1}: 0 when equal, 2 otherwise."""
    _check_sign(e, x)
    return abs(e - x)


def coeff_diff(e: int, x: int) -> int:
    _check_sign(e, x)
    return e - x


def _check_sign(*signs: int) -> None:
    for s in signs:
        if s not in SIGNS:
            raise ValueError(f"sign must be +1 or -1, got {s!r}")


def _delta(i: int, j: int) -> int:
    return 1 if i == j else 0


# relation bodies, each returning LHS - RHS in whatever generators are passed in


def pf_expr(j, k, l, xi, eta, eps) -> Expression:
    lhs = commutator(commutator(f(j, xi), f(k, eta)), f(l, eps))
    rhs = (coeff_abs(eps, eta) * _delta(k, l)) * f(j, xi) - (
        coeff_abs(eps, xi) * _delta(j, l)
    ) * f(k, eta)
    return lhs - rhs


def pb_expr(j, k, l, xi, eta, eps) -> Expression:
    lhs = commutator(anticommutator(b(j, xi), b(k, eta)), b(l, eps))
    rhs = (coeff_diff(eps, xi) * _delta(j, l)) * b(k, eta) + (
        coeff_diff(eps, eta) * _delta(k, l)
    ) * b(j, xi)
    return lhs - rhs


def ff_b_expr(j, k, l, xi, eta, eps) -> Expression:
    return commutator(commutator(f(j, xi), f(k, eta)), b(l, eps))


def bb_f_expr(j, k, l, xi, eta, eps) -> Expression:
    return commutator(anticommutator(b(j, xi), b(k, eta)), f(l, eps))


def relpf_fb_f_expr(j, k, l, xi, eta, eps) -> Expression:
    lhs = commutator(commutator(f(j, xi), b(k, eta)), f(l, eps))
    return lhs + (coeff_abs(eps, xi) * _delta(j, l)) * b(k, eta)


def relpf_fb_b_expr(j, k, l, xi, eta, eps) -> Expression:
    lhs = anticommutator(commutator(f(j, xi), b(k, eta)), b(l, eps))
    return lhs - (coeff_diff(eps, eta) * _delta(k, l)) * f(j, xi)


def relpb_fb_f_expr(j, k, l, xi, eta, eps) -> Expression:
    lhs = anticommutator(anticommutator(f(j, xi), b(k, eta)), f(l, eps))
    return lhs - (coeff_abs(eps, xi) * _delta(j, l)) * b(k, eta)


def relpb_fb_b_expr(j, k, l, xi, eta, eps) -> Expression:
    lhs = commutator(anticommutator(f(j, xi), b(k, eta)), b(l, eps))
    return lhs - (coeff_diff(eps, eta) * _delta(k, l)) * f(j, xi)


# Cartan-type elements


def h_element(i: int, m: int, n: int) -> Expression:
    """``h_i`` expanded in the generators (fermionic for i <= m, bosonic after)."""
    if 1 <= i <= m:
        return Fraction(-1, 2) * commutator(f(i, -1), f(i, 1))
    if m < i <= m + n:
        k = i - m
        return Fraction(1, 2) * anticommutator(b(k, -1), b(k, 1))
    raise ConfigurationError(f"h index {i} outside 1..{m + n}")


def H_element(m: int, n: int) -> Expression:
    acc = ZERO
    for i in range(1, m + n + 1):
        acc = acc + h_element(i, m, n)
    return acc


def _ladder(h: Expression, x: Expression, shift: int) -> Expression:
    # h x - x (h + shift)
    return mul(h, x) - mul(x, h + shift)


_SIGN_TRIPLES = tuple(itertools.product(SIGNS, repeat=3))
_SIGN_PAIRS = tuple(itertools.product(SIGNS, repeat=2))


def _triples(r1: int, r2: int, r3: int):
    return itertools.product(range(1, r1 + 1), range(1, r2 + 1), range(1, r3 + 1))


def _needs(family: RelationFamily) -> tuple[bool, bool]:
    """Whether a family needs parafermions, parabosons."""
    return {
        RelationFamily.PF: (True, False),
        RelationFamily.PB: (False, True),
        RelationFamily.REL_PF: (True, True),
        RelationFamily.REL_PB_TB: (False, True),
        RelationFamily.REL_PB_TF: (True, False),
        RelationFamily.REL_PB_MIXED: (True, True),
        RelationFamily.H_RELS: (False, False),
        RelationFamily.KLEIN: (False, False),
        RelationFamily.TILDE_IDENTITY: (True, False),
    }[family]


def applicable(family: RelationFamily, m: int, n: int) -> bool:
    need_f, need_b = _needs(RelationFamily(family))
    return (m >= 1 or not need_f) and (n >= 1 or not need_b)


def _validate_mn(m: int, n: int) -> None:
    if m < 0 or n < 0 or m + n < 1:
        raise ConfigurationError(f"need m, n >= 0 and m + n >= 1, got m={m}, n={n}")


def enumerate_family(
    family: RelationFamily | str, m: int, n: int, *, strict: bool = True
) -> list[RelationInstance]:
    """All instances of one relation family for ``m`` parafermions and ``n`` parabosons.

    With ``strict`` a family that needs absent generators is a configuration
    error; otherwise it enumerates to the empty list.
    """
    family = RelationFamily(family)
    _validate_mn(m, n)
    if not applicable(family, m, n):
        if strict:
            raise ConfigurationError(
                f"family {family} is not applicable to m={m}, n={n}"
            )
        return []
    out = list(_BUILDERS[family](m, n))
    out.sort(key=RelationInstance.sort_key)
    return out


def _enum_pf(m, n):
    for (j, k, l), sg in itertools.product(_triples(m, m, m), _SIGN_TRIPLES):
        yield RelationInstance(RelationFamily.PF, None, (j, k, l), sg, plain=pf_expr(j, k, l, *sg))


def _enum_pb(m, n):
    for (j, k, l), sg in itertools.product(_triples(n, n, n), _SIGN_TRIPLES):
        yield RelationInstance(RelationFamily.PB, None, (j, k, l), sg, plain=pb_expr(j, k, l, *sg))


_MIXED_SHAPES = {
    # sub: (index ranges as (f?, f?, f?) flags, relative-parafermion body, relative-paraboson body)
    "ff_b": ("ffb", ff_b_expr, ff_b_expr),
    "bb_f": ("bbf", bb_f_expr, bb_f_expr),
    "fb_f": ("fbf", relpf_fb_f_expr, relpb_fb_f_expr),
    "fb_b": ("fbb", relpf_fb_b_expr, relpb_fb_b_expr),
}


def _mixed_ranges(pattern: str, m: int, n: int):
    sizes = [m if c == "f" else n for c in pattern]
    return _triples(*sizes)


def _enum_rel_pf(m, n):
    for sub, (pattern, body, _) in _MIXED_SHAPES.items():
        for idx, sg in itertools.product(_mixed_ranges(pattern, m, n), _SIGN_TRIPLES):
            yield RelationInstance(RelationFamily.REL_PF, sub, idx, sg, plain=body(*idx, *sg))


def _enum_rel_pb_tb(m, n):
    for (j, k, l), sg in itertools.product(_triples(n, n, n), _SIGN_TRIPLES):
        yield RelationInstance(
            RelationFamily.REL_PB_TB, None, (j, k, l), sg, tilde=pb_expr(j, k, l, *sg)
        )


def _enum_rel_pb_tf(m, n):
    for (j, k, l), sg in itertools.product(_triples(m, m, m), _SIGN_TRIPLES):
        yield RelationInstance(
            RelationFamily.REL_PB_TF, None, (j, k, l), sg, tilde=pf_expr(j, k, l, *sg)
        )


def _enum_rel_pb_mixed(m, n):
    for sub, (pattern, _, body) in _MIXED_SHAPES.items():
        for idx, sg in itertools.product(_mixed_ranges(pattern, m, n), _SIGN_TRIPLES):
            yield RelationInstance(
                RelationFamily.REL_PB_MIXED, sub, idx, sg, tilde=body(*idx, *sg)
            )


def _enum_h_rels(m, n):
    H = H_element(m, n)
    hs = {i: h_element(i, m, n) for i in range(1, m + n + 1)}
    targets = [("f", j, f, j) for j in range(1, m + 1)]
    targets += [("b", k, b, m + k) for k in range(1, n + 1)]
    for letter, idx, ctor, slot in targets:
        for s in SIGNS:
            x = ctor(idx, s)
            for i, h in hs.items():
                yield RelationInstance(
                    RelationFamily.H_RELS,
                    f"h_{letter}",
                    (i, idx),
                    (s,),
                    plain=_ladder(h, x, s * _delta(i, slot)),
                )
            yield RelationInstance(
                RelationFamily.H_RELS, f"H_{letter}", (idx,), (s,), plain=_ladder(H, x, s)
            )


def _enum_klein(m, n):
    yield RelationInstance(
        RelationFamily.KLEIN, "KK", (), (),
        plain=mul(K, K) - ONE,
        products=((1, (K, K)), (-1, (ONE,))),
    )
    for letter, ctor, size in (("f", f, m), ("b", b, n)):
        for idx in range(1, size + 1):
            for s in SIGNS:
                g = ctor(idx, s)
                yield RelationInstance(
                    RelationFamily.KLEIN,
                    f"K{letter}",
                    (idx,),
                    (s,),
                    plain=anticommutator(K, g),
                    products=((1, (K, g)), (1, (g, K))),
                )


def tilde_identities(m: int, n: int) -> list[RelationInstance]:
    """In-text identities relating tilde brackets to signed original brackets.

    Each instance has ``tilde`` = the bracket or relation in tilde operators and
    ``plain`` = minus its claimed image in the original operators, so ``expr``
    must vanish identically in the Klein-extended free algebra.
    """
    fam = RelationFamily.TILDE_IDENTITY
    out: list[RelationInstance] = []
    fr, br = range(1, m + 1), range(1, n + 1)
    # (a) [f~, f~] = -xi eta [f, f]
    for j, k in itertools.product(fr, fr):
        for xi, eta in _SIGN_PAIRS:
            br_ff = commutator(f(j, xi), f(k, eta))
            out.append(RelationInstance(fam, "ff", (j, k), (xi, eta), tilde=br_ff, plain=(xi * eta) * br_ff))
    # (b) {f~, b~} = -xi [f, b] K
    for j, k in itertools.product(fr, br):
        for xi, eta in _SIGN_PAIRS:
            out.append(
                RelationInstance(
                    fam,
                    "fb",
                    (j, k),
                    (xi, eta),
                    tilde=anticommutator(f(j, xi), b(k, eta)),
                    plain=xi * mul(commutator(f(j, xi), b(k, eta)), K),
                )
            )
    # (c) tf-rels = -xi eta eps (PF relation) K
    for (j, k, l), (xi, eta, eps) in itertools.product(_triples(m, m, m), _SIGN_TRIPLES):
        rel = pf_expr(j, k, l, xi, eta, eps)
        out.append(
            RelationInstance(fam, "fff", (j, k, l), (xi, eta, eps), tilde=rel, plain=(xi * eta * eps) * mul(rel, K))
        )
    # (d) mixed replays
    for (j, k, l), (xi, eta, eps) in itertools.product(_triples(m, n, m), _SIGN_TRIPLES):
        out.append(
            RelationInstance(
                fam,
                "fbf",
                (j, k, l),
                (xi, eta, eps),
                tilde=relpb_fb_f_expr(j, k, l, xi, eta, eps),
                plain=-(eps * xi) * relpf_fb_f_expr(j, k, l, xi, eta, eps),
            )
        )
    for (j, k, l), (xi, eta, eps) in itertools.product(_triples(m, n, n), _SIGN_TRIPLES):
        out.append(
            RelationInstance(
                fam,
                "fbb",
                (j, k, l),
                (xi, eta, eps),
                tilde=relpb_fb_b_expr(j, k, l, xi, eta, eps),
                plain=-xi * mul(relpf_fb_b_expr(j, k, l, xi, eta, eps), K),
            )
        )
    # (e) tb-rels are the PB relations verbatim
    for (j, k, l), sg in itertools.product(_triples(n, n, n), _SIGN_TRIPLES):
        rel = pb_expr(j, k, l, *sg)
        out.append(RelationInstance(fam, "bbb", (j, k, l), sg, tilde=rel, plain=-rel))
    return out


_BUILDERS = {
    RelationFamily.PF: _enum_pf,
    RelationFamily.PB: _enum_pb,
    RelationFamily.REL_PF: _enum_rel_pf,
    RelationFamily.REL_PB_TB: _enum_rel_pb_tb,
    RelationFamily.REL_PB_TF: _enum_rel_pb_tf,
    RelationFamily.REL_PB_MIXED: _enum_rel_pb_mixed,
    RelationFamily.H_RELS: _enum_h_rels,
    RelationFamily.KLEIN: _enum_klein,
    RelationFamily.TILDE_IDENTITY: tilde_identities,
}


def sign_lemma_holds() -> bool:
    """``-eta eps |eps - eta| == |eps - eta|`` for all sign pairs."""
    return all(-eta * eps * coeff_abs(eps, eta) == coeff_abs(eps, eta) for eta, eps in _SIGN_PAIRS)
