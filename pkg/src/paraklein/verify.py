"""Symbolic proof replay and matrix relation suites, aggregated into reports."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Expression, Word, generators, klein_transform
from .errors import ConfigurationError
from .fock import (
    DEFAULT_DIMENSION_CAP,
    MUTATIONS,
    CheckResult,
    ModeSpec,
    Representation,
    adjoint_check,
    build_representation,
    check_relation,
    cyclic_subspace,
    evaluate,
    klein_checks,
    ladder_checks,
    vacuum_checks,
)
from .relations import (
    ALL_FAMILIES,
    RelationFamily,
    applicable,
    coeff_abs,
    enumerate_family,
    tilde_identities,
)

__all__ = [
    "SCHEMA",
    "SuiteConfig",
    "Report",
    "expand_families",
    "random_expression",
    "symbolic_tilde_identities",
    "run_matrix_suite",
    "mutation_selfcheck",
    "cross_layer_checks",
    "cyclic_comparison",
]

SCHEMA = "paraklein.report/1"


def expand_families(
    requested: str | list[str] | tuple, m: int, n: int
) -> tuple[tuple[RelationFamily, ...], tuple[RelationFamily, ...]]:
    """Resolve a family request into (families to run, families skipped).

    ``"all"`` silently drops families that need absent generators and
    returns them as skipped; explicitly named families must apply.
    """
    if isinstance(requested, str):
        requested = [t.strip() for t in requested.split(",") if t.strip()]
    if not requested:
        raise ConfigurationError("no relation families requested")
    if list(requested) == ["all"]:
        run = tuple(f for f in ALL_FAMILIES if applicable(f, m, n))
        skipped = tuple(f for f in ALL_FAMILIES if not applicable(f, m, n))
        return run, skipped
    fams = []
    for name in requested:
        try:
            fam = RelationFamily(name.upper() if isinstance(name, str) else name)
        except ValueError:
            raise ConfigurationError(f"unknown relation family {name!r}") from None
        if not applicable(fam, m, n):
            raise ConfigurationError(f"family {fam} is not applicable to m={m}, n={n}")
        if fam not in fams:
            fams.append(fam)
    fams.sort(key=ALL_FAMILIES.index)
    return tuple(fams), ()


@dataclass(frozen=True)
class SuiteConfig:
    spec: ModeSpec
    families: tuple[RelationFamily, ...]
    symbolic_only: bool = False
    random_seed: int = 0
    dimension_cap: int = DEFAULT_DIMENSION_CAP
    random_expressions: int = 100

    def __post_init__(self):
        if not self.families:
            raise ConfigurationError("families must be non-empty")
        object.__setattr__(self, "families", tuple(RelationFamily(f) for f in self.families))
        for fam in self.families:
            if not applicable(fam, self.spec.m, self.spec.n):
                raise ConfigurationError(
                    f"family {fam} is not applicable to m={self.spec.m}, n={self.spec.n}"
                )
        if not self.symbolic_only:
            self.spec.require_suite_cutoff()

    def echo(self) -> dict:
        s = self.spec
        return {
            "m": s.m,
            "n": s.n,
            "p": s.p,
            "bosonCutoff": s.boson_cutoff,
            "families": [f.value for f in self.families],
            "symbolicOnly": self.symbolic_only,
            "seed": self.random_seed,
            "dimensionCap": self.dimension_cap,
        }


@dataclass
class Report:
    title: str
    config: dict
    instances: list[CheckResult] = field(default_factory=list)
    checks: list[CheckResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.instances + self.checks if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "instances": len(self.instances),
            "instancesFailed": sum(not r.passed for r in self.instances),
            "checks": len(self.checks),
            "checksFailed": sum(not r.passed for r in self.checks),
            "status": "pass" if self.passed else "fail",
        }

    def to_dict(self) -> dict:
        d = {
            "schema": SCHEMA,
            "title": self.title,
            "config": self.config,
            "instances": [r.to_dict() for r in self.instances],
            "checks": [r.to_dict() for r in self.checks],
            "summary": self.summary(),
        }
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"# {self.title} [{SCHEMA}]"]
        lines += [f"# {k} = {v}" for k, v in self.config.items()]
        lines += [f"# note: {n}" for n in self.notes]
        for r in self.instances + self.checks:
            status = "PASS" if r.passed else "FAIL"
            line = f"{status} {r.id} safe={r.safe_columns}"
            if r.failure:
                line += " " + json.dumps(r.failure, sort_keys=True)
            lines.append(line)
        s = self.summary()
        lines.append(
            f"summary: {s['status']} instances={s['instances']} failed={s['instancesFailed']} "
            f"checks={s['checks']} failed={s['checksFailed']}"
        )
        return "\n".join(lines) + "\n"


def random_expression(
    rng: random.Random, m: int, n: int, max_len: int = 3, max_terms: int = 4
) -> Expression:
    gens = generators(m, n)
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        letters = tuple(rng.choice(gens) for _ in range(rng.randint(0, max_len)))
        coeff = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        terms.append((Word(letters, rng.randint(0, 1)), coeff))
    return Expression(terms)


def _symbolic_result(label: str, expr: Expression) -> CheckResult:
    if expr.is_zero():
        return CheckResult(label, True, 0)
    return CheckResult(label, False, 0, {"residual": str(expr)})


def symbolic_tilde_identities(m: int, n: int) -> Report:
    """Replay the tilde-bracket identities in the free Klein-extended algebra.

    Indices run up to ``min(m, 2)`` and ``min(n, 2)``; nothing beyond
    ``K^2 = 1`` and ``{K, g} = 0`` is used.
    """
    if m < 0 or n < 0 or m + n < 1:
        raise ConfigurationError(f"need m, n >= 0 and m + n >= 1, got m={m}, n={n}")
    mm, nn = min(m, 2), min(n, 2)
    report = Report("symbolic tilde identities", {"m": m, "n": n, "indexCap": 2, "schema": SCHEMA})
    for eta in (-1, 1):
        for eps in (-1, 1):
            ok = -eta * eps * coeff_abs(eps, eta) == coeff_abs(eps, eta)
            sg = ("+" if eta > 0 else "-") + ("+" if eps > 0 else "-")
            report.checks.append(CheckResult(f"SIGN_LEMMA::{sg}", ok, 0))
    for inst in tilde_identities(mm, nn):
        report.instances.append(_symbolic_result(inst.id, inst.expr))
    return report


def cross_layer_checks(rep: Representation, count: int, seed: int) -> list[CheckResult]:
    """evaluate(klein_transform(e)) against e evaluated on the tilde matrices."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        e = random_expression(rng, rep.spec.m, rep.spec.n)
        lhs = evaluate(klein_transform(e), rep)
        rhs = evaluate(e, rep, tilde=True)
        failure = None if lhs == rhs else {"expression": str(e)}
        out.append(CheckResult(f"CROSS_LAYER:{i:03d}", failure is None, rep.dim, failure))
    return out


def _relation_results(rep: Representation, families, stop_early: bool = False) -> list[CheckResult]:
    out = []
    for fam in families:
        for inst in enumerate_family(fam, rep.spec.m, rep.spec.n):
            res = check_relation(inst, rep)
            out.append(res)
            if stop_early and not res.passed:
                return out
    return out


def run_matrix_suite(cfg: SuiteConfig) -> Report:
    """Build one representation and check every requested relation family on it."""
    if cfg.symbolic_only:
        report = symbolic_tilde_identities(cfg.spec.m, cfg.spec.n)
        report.title = "symbolic suite"
        report.config = cfg.echo()
        return report
    rep = build_representation(cfg.spec, cfg.dimension_cap)
    report = Report("matrix suite", cfg.echo() | {"dimension": rep.dim})
    report.instances = _relation_results(rep, cfg.families)
    report.checks = (
        klein_checks(rep)
        + vacuum_checks(rep)
        + adjoint_check(rep)
        + ladder_checks(rep)
        + cross_layer_checks(rep, cfg.random_expressions, cfg.random_seed)
    )
    return report


def mutation_selfcheck(cfg: SuiteConfig) -> Report:
    """Each deliberately broken construction must fail at least one check."""
    s = cfg.spec
    if s.m < 1 or s.n < 1:
        raise ConfigurationError("mutation self-check needs m >= 1 and n >= 1")
    families = tuple(f for f in ALL_FAMILIES if applicable(f, s.m, s.n))
    report = Report("mutation self-check", cfg.echo() | {"families": [f.value for f in families]})
    for mutation in MUTATIONS:
        rep = build_representation(s, cfg.dimension_cap, mutation=mutation)
        results = klein_checks(rep) + _relation_results(rep, families, stop_early=True)
        failed = [r.id for r in results if not r.passed]
        detail = {"caughtBy": failed[0], "failuresSeen": len(failed)} if failed else {
            "detail": "mutant passed every check"
        }
        report.instances.append(
            CheckResult(f"MUTANT:{mutation}", bool(failed), rep.dim, None if failed else detail)
        )
        if failed:
            report.notes.append(f"{mutation} caught by {failed[0]}")
    return report


def cyclic_comparison(rep: Representation, max_level: int) -> dict[str, dict[int, int]]:
    """Level dimensions of the vacuum-generated subspace for both operator sets.

    Reporting only; no equality is asserted.
    """
    return {
        "original": cyclic_subspace(rep, max_level),
        "tilde": cyclic_subspace(rep, max_level, tilde=True),
    }
