"""Decision engine: hypothesis gates, dispatch among the simplicity
criteria, Weil-restriction decomposition, and canned scenarios.

The dispatch: a field coefficient algebra goes through the character-orbit
test; a quaternion algebra over Q first needs the lattice simple over Q and
then asks whether the lattice's endomorphism algebra contains a splitting
field; everything else is reported unsupported, never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import groups as G
from . import lattices as L
from .arith import is_prime, is_sum_of_three_squares, squarefree_part
from .errors import InvalidInputError, UnsupportedError
from .numberfields import (
    AbelianField,
    DivisionAlgebraDesc,
    FieldDescriptor,
    QuadraticField,
    QuaternionAlgebraQ,
    RationalField,
    contains_splitting_subfield,
    quadratic_subfield_of_prime_cyclotomic,
)


@dataclass(frozen=True)
class Hypotheses:
    dimension: int = 1
    absolutely_simple: bool = True
    principally_polarised: bool = True
    end_stability: str = "asserted"  # "asserted" | "derive"

    def __post_init__(self):
        if self.dimension < 1:
            raise InvalidInputError("dimension must be >= 1")
        if self.end_stability not in ("asserted", "derive"):
            raise InvalidInputError("end_stability must be 'asserted' or 'derive'")

    def describe(self) -> dict:
        return {
            "dimension": self.dimension,
            "absolutely_simple": self.absolutely_simple,
            "principally_polarised": self.principally_polarised,
            "end_stability": self.end_stability,
        }


@dataclass(frozen=True)
class TwistProblem:
    group: G.GroupSpec
    lattice: L.IntegralRep
    end_algebra: DivisionAlgebraDesc
    hypotheses: Hypotheses = field(default_factory=Hypotheses)

    def __post_init__(self):
        if self.lattice.group != self.group:
            raise InvalidInputError("lattice group does not match the problem group")


@dataclass(frozen=True)
class GateReport:
    passed: bool
    route: str | None
    reason: str
    warnings: tuple[str, ...] = ()

    def describe(self) -> dict:
        return {
            "passed": self.passed,
            "route": self.route,
            "reason": self.reason,
            "warnings": list(self.warnings),
        }


@dataclass(frozen=True)
class Verdict:
    outcome: str  # "simple" | "not_simple" | "unsupported"
    rule: str
    certificate: dict
    warnings: tuple[str, ...] = ()

    def describe(self) -> dict:
        return {
            "outcome": self.outcome,
            "rule": self.rule,
            "certificate": self.certificate,
            "warnings": list(self.warnings),
        }


def silverberg_bound(dimension: int) -> int:
    """Sufficient prime bound for endomorphism stability: 4*(9d)^(4d)."""
    return 4 * (9 * dimension) ** (4 * dimension)


def check_hypotheses(problem: TwistProblem) -> GateReport:
    """Endomorphism-stability gate: either asserted by the caller, or derived
    from the known sufficient conditions for small dimension or large prime."""
    grp = problem.group
    p = grp.n if isinstance(grp, G.Cyclic) else None
    return _stability_gate(p, problem.hypotheses)


def _stability_gate(p: int | None, hyp: Hypotheses) -> GateReport:
    if hyp.end_stability == "asserted":
        return GateReport(
            True,
            "asserted",
            "endomorphism stability asserted by the caller",
            ("End(A) = End(A_K) was asserted, not derived",),
        )
    if p is None or not is_prime(p):
        return GateReport(False, None, "derivation requires a cyclic group of prime order")
    failures = []
    if p == 2:
        failures.append("derivation requires an odd prime")
    elif hyp.dimension <= 2:
        if not (hyp.absolutely_simple and hyp.principally_polarised) and p <= 3:
            failures.append("p > 3 required when A is not absolutely simple and principally polarised")
        elif hyp.dimension == 2 and not hyp.absolutely_simple and p % 3 == 0:
            failures.append("degree coprime to 6 required for non-absolutely-simple surfaces")
        else:
            return GateReport(True, "small_dimension", f"dimension {hyp.dimension} <= 2 with odd prime p = {p}")
    bound = silverberg_bound(hyp.dimension)
    if p > bound:
        return GateReport(True, "silverberg", f"p = {p} exceeds the sufficient bound {bound}")
    failures.append(f"p <= sufficient bound {bound} for dimension {hyp.dimension}")
    return GateReport(False, None, "; ".join(failures))


def _endo_is_field(shape: L.EndoAlgebraShape) -> bool:
    return (
        len(shape.components) == 1
        and shape.components[0][0] == 1
        and not isinstance(shape.components[0][1], QuaternionAlgebraQ)
    )


def _field_case(problem: TwistProblem) -> Verdict:
    try:
        simple, cert = L.is_simple_over(problem.lattice, problem.end_algebra)
    except UnsupportedError as exc:
        return Verdict("unsupported", "unsupported_algebra", {"message": str(exc)})
    shape = L.endo_algebra_over_Q(problem.lattice)
    cert["endo_algebra_over_Q"] = shape.describe()
    if simple:
        return Verdict("simple", "prop_main", cert)
    # Not simple.  When the lattice is rationally irreducible with a field
    # endomorphism algebra and the failure came from a nontrivial cyclotomic
    # intersection, the decision is the intersection criterion.
    via_intersection = (
        _endo_is_field(shape)
        and len(cert["orbits"]) > 1
        and not cert.get("reducible_over_Q", True)
        and cert["intersection"]["degree"] > 1
    )
    if via_intersection:
        cert["intersection_witness"] = cert["intersection"]
        return Verdict("not_simple", "prop_gammafield", cert)
    return Verdict("not_simple", "prop_main", cert)


def _quaternion_case(problem: TwistProblem) -> Verdict:
    d = problem.end_algebra
    simple_q, cert_q = L.is_simple_over(problem.lattice, RationalField())
    if not simple_q:
        cert_q["reason"] = "the lattice is already non-simple rationally"
        return Verdict("not_simple", "reducible_gamma", cert_q)
    shape = L.endo_algebra_over_Q(problem.lattice)
    assert len(shape.components) == 1 and shape.components[0][0] == 1
    delta = shape.components[0][1]
    cert: dict = {
        "endo_algebra_over_Q": shape.describe(),
        "coefficient_algebra": d.describe(),
        "rationally_simple": cert_q,
    }
    try:
        found, witness = contains_splitting_subfield(delta, d)
    except UnsupportedError as exc:
        return Verdict("unsupported", "unsupported_algebra", {"message": str(exc)})
    rule = "prop_gammafield" if not isinstance(delta, QuaternionAlgebraQ) else "prop_quaternion"
    if found:
        cert["splitting_subfield"] = witness.describe()
        return Verdict("not_simple", rule, cert)
    cert["splitting_subfield"] = None
    return Verdict("simple", rule, cert)


def decide_simplicity(problem: TwistProblem) -> Verdict:
    """Simplicity of the twist, assuming the hypothesis gate has been dealt
    with (asserted or passed)."""
    d = problem.end_algebra
    if isinstance(d, QuaternionAlgebraQ):
        return _quaternion_case(problem)
    if isinstance(d, FieldDescriptor):
        return _field_case(problem)
    return Verdict(
        "unsupported",
        "unsupported_algebra",
        {"message": f"unsupported coefficient algebra {d!r}"},
    )


def check_and_decide(problem: TwistProblem) -> tuple[GateReport, Verdict]:
    gate = check_hypotheses(problem)
    if not gate.passed:
        return gate, Verdict(
            "unsupported",
            "hypothesis_failure",
            {"gate": gate.describe()},
        )
    verdict = decide_simplicity(problem)
    return gate, Verdict(verdict.outcome, verdict.rule, verdict.certificate, verdict.warnings + tuple(gate.warnings))


# --- Weil restriction ------------------------------------------------------------


def weil_restriction_decompose(
    group: G.GroupSpec,
    end_algebra: DivisionAlgebraDesc,
    hypotheses: Hypotheses | None = None,
) -> list[dict]:
    """Isogeny factors of the Weil restriction along rational irreducibles of
    Q[G], each with the simplicity verdict of the corresponding twist."""
    hyp = hypotheses or Hypotheses()
    out = []
    total = 0
    for ri in G.rational_irreducibles(group):
        lattice = L.lattice_for_rational_irreducible(group, ri)
        verdict = decide_simplicity(TwistProblem(group, lattice, end_algebra, hyp))
        out.append(
            {
                "factor": ri.label,
                "multiplicity": ri.multiplicity_in_regular,
                "q_dimension": ri.q_dimension,
                "endomorphism_algebra_of_lattice": ri.endo.describe(),
                "verdict": verdict.describe(),
            }
        )
        total += ri.multiplicity_in_regular * ri.q_dimension
    assert total == G.group_order(group)
    return out


# --- canned scenarios --------------------------------------------------------------


def scenario(name: str, params: dict) -> dict:
    if name == "theorem1":
        return _scenario_theorem1(params)
    if name == "theorem2":
        return _scenario_theorem2(params)
    if name == "trace_kernel":
        return _scenario_trace_kernel(params)
    if name == "dihedral_X":
        return _scenario_dihedral_x(params)
    if name == "q8_H":
        return _scenario_q8_h(params)
    raise InvalidInputError(f"unknown scenario {name!r}")


def _require(params: dict, key: str):
    if key not in params:
        raise InvalidInputError(f"scenario parameter {key!r} is required")
    return params[key]


def _scenario_theorem1(params: dict) -> dict:
    p = _require(params, "p")
    if p == 2 or not is_prime(p):
        raise InvalidInputError("theorem1 needs an odd prime p")
    dim = params.get("dim", 1)
    if dim not in (1, 2):
        raise InvalidInputError("theorem1 covers dimension 1 or 2")
    d_alg = _require(params, "end_algebra")
    hyp = Hypotheses(
        dimension=dim,
        absolutely_simple=params.get("absolutely_simple", True),
        principally_polarised=params.get("principally_polarised", True),
        end_stability="derive",
    )
    problem = TwistProblem(G.Cyclic(p), L.augmentation_lattice(G.Cyclic(p)), d_alg, hyp)
    gate, verdict = check_and_decide(problem)
    return {
        "scenario": "theorem1",
        "params": {"p": p, "dim": dim, "end_algebra": d_alg.describe()},
        "quadratic_subfield_discriminant_base": quadratic_subfield_of_prime_cyclotomic(p),
        "gate": gate.describe(),
        "verdict": verdict.describe(),
    }


_LARGE_PRIME_THRESHOLD = 97


def augmentation_verdict_large_prime(p: int, d_alg: FieldDescriptor) -> Verdict:
    """Simplicity of the augmentation twist of C_p over a field, without
    materializing the rank p-1 lattice: the p-1 nontrivial characters form
    orbits of size |Gal(Q(mu_p) / D cap Q(mu_p))|."""
    from .numberfields import intersect_with_cyclotomic

    inter = intersect_with_cyclotomic(d_alg, p)
    if inter.conductor == 1:
        h_size = p - 1
    else:
        assert inter.conductor == p
        h_size = len(inter.subgroup)
    orbit_count = (p - 1) // h_size
    cert = {
        "exponent": p,
        "intersection": inter.describe(),
        "orbit_count": orbit_count,
        "orbit_size": h_size,
        "multiplicity": 1,
        "schur": {"catalog_index_over_Q": 1, "index_over_D": 1},
    }
    if orbit_count == 1:
        return Verdict("simple", "prop_main", cert)
    cert["intersection_witness"] = cert["intersection"]
    return Verdict("not_simple", "prop_gammafield", cert)


def _scenario_theorem2(params: dict) -> dict:
    dim = _require(params, "dim")
    if dim < 1:
        raise InvalidInputError("dimension must be >= 1")
    bound = silverberg_bound(dim)
    report = {
        "scenario": "theorem2",
        "params": {"dim": dim},
        "sufficient_prime_bound": bound,
        "bound_is": "sufficient, not claimed minimal",
    }
    p = params.get("p")
    if p is None:
        return report
    report["params"]["p"] = p
    if not is_prime(p):
        raise InvalidInputError("theorem2 needs a prime p")
    report["prime_exceeds_bound"] = p > bound
    hyp = Hypotheses(dimension=dim, end_stability="derive")
    d_alg = params.get("end_algebra")
    if p <= _LARGE_PRIME_THRESHOLD:
        problem = TwistProblem(
            G.Cyclic(p), L.augmentation_lattice(G.Cyclic(p)), d_alg or RationalField(), hyp
        )
        gate, verdict = check_and_decide(problem)
    else:
        gate = _stability_gate(p, hyp)
        if not gate.passed:
            verdict = Verdict("unsupported", "hypothesis_failure", {"gate": gate.describe()})
        elif d_alg is None:
            verdict = None
        elif isinstance(d_alg, QuaternionAlgebraQ):
            raise InvalidInputError("theorem2 covers field coefficient algebras")
        else:
            verdict = augmentation_verdict_large_prime(p, d_alg)
    report["gate"] = gate.describe()
    if d_alg is not None and verdict is not None:
        report["params"]["end_algebra"] = d_alg.describe()
        report["verdict"] = verdict.describe()
    return report


def _scenario_trace_kernel(params: dict) -> dict:
    group = _require(params, "group")
    d_alg = params.get("end_algebra") or RationalField()
    hyp = params.get("hypotheses") or Hypotheses()
    lattice = L.augmentation_lattice(group)
    verdict = decide_simplicity(TwistProblem(group, lattice, d_alg, hyp))
    return {
        "scenario": "trace_kernel",
        "params": {"group": str(group), "end_algebra": d_alg.describe()},
        "rational_irreducible_count": len(G.rational_irreducibles(group)),
        "group_order_is_prime": is_prime(G.group_order(group)),
        "verdict": verdict.describe(),
    }


def _scenario_dihedral_x(params: dict) -> dict:
    p = _require(params, "p")
    if not is_prime(p) or p == 2:
        raise InvalidInputError("dihedral_X needs an odd prime p")
    d_alg = _require(params, "end_algebra")
    hyp = params.get("hypotheses") or Hypotheses()
    group = G.Dihedral(2 * p)
    lattice = L.dihedral_rho_lattice(p)
    verdict = decide_simplicity(TwistProblem(group, lattice, d_alg, hyp))
    shape = L.endo_algebra_over_Q(lattice)
    return {
        "scenario": "dihedral_X",
        "params": {"p": p, "end_algebra": d_alg.describe()},
        "endomorphism_field": shape.components[0][1].describe(),
        "verdict": verdict.describe(),
    }


def _scenario_q8_h(params: dict) -> dict:
    d = _require(params, "d")
    if d < 1 or squarefree_part(d) != d:
        raise InvalidInputError("q8_H needs a positive squarefree d")
    cm = QuadraticField(-d)
    group = G.Quaternion8()
    lattice = L.q8_quaternion_lattice()
    verdict = decide_simplicity(TwistProblem(group, lattice, cm, Hypotheses()))
    return {
        "scenario": "q8_H",
        "params": {"d": d},
        "cm_field": cm.describe(),
        "verdict": verdict.describe(),
    }
