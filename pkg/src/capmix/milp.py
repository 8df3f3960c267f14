"""Solver-agnostic textual MILP models for the expected-mix formulations.

Two exports are offered: a fully concrete model for finite capability sets
(anchor-activation binaries plus chain-order binaries under big-M), and a
template for compact sets whose per-state feasible regions arrive as opaque
caller-supplied constraint blocks.  Nothing here invokes a solver; models are
emitted as deterministic plain text with sections OBJECTIVES / CONSTRAINTS /
BOUNDS / BINARIES.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from .errors import PreconditionError
from .geometry import Being
from .mixing import Act, ChainCertificate, ProbabilityVector

FAMILY_SELECTION_CARD = "selection_cardinality"
FAMILY_SELECTION_BOUND = "selection_bound"
FAMILY_ORDER = "order"
FAMILY_ANTISYMMETRY = "order_antisymmetry"

_FAMILY_COMMENTS = {
    FAMILY_SELECTION_CARD: "at least one anchor stays active per state",
    FAMILY_SELECTION_BOUND: "aggregated beings stay below an active anchor",
    FAMILY_ORDER: "chain order between states (binary off forces <=)",
    FAMILY_ANTISYMMETRY: "at most one strict direction per state pair",
}


def _fmt(x: float) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class LinearConstraint:
    """One `sum(coeff * var) <= rhs` row."""

    name: str
    family: str
    terms: tuple[tuple[str, float], ...]
    rhs: float
    sense: str = "<="

    def evaluate(self, assignment: Mapping[str, float]) -> float:
        try:
            return sum(coeff * assignment[var] for var, coeff in self.terms)
        except KeyError as exc:
            raise ValueError(f"assignment is missing variable {exc.args[0]!r}") from None

    def satisfied(self, assignment: Mapping[str, float], tol: float = 1e-9) -> bool:
        return self.evaluate(assignment) <= self.rhs + tol

    def render(self) -> str:
        return f"{self.name}: {_render_terms(self.terms)} {self.sense} {_fmt(self.rhs)}"


@dataclass(frozen=True)
class Objective:
    name: str
    terms: tuple[tuple[str, float], ...]

    def evaluate(self, assignment: Mapping[str, float]) -> float:
        return sum(coeff * assignment[var] for var, coeff in self.terms)

    def render(self) -> str:
        return f"maximize {self.name}: {_render_terms(self.terms)}"


def _render_terms(terms: Sequence[tuple[str, float]]) -> str:
    parts: list[str] = []
    for var, coeff in terms:
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        body = var if mag == 1 else f"{_fmt(mag)} {var}"
        if not parts:
            parts.append(body if sign == "+" else f"- {body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


@dataclass(frozen=True)
class MilpModel:
    """Structured model plus its deterministic textual rendering."""

    name: str
    continuous_vars: tuple[str, ...]
    binary_vars: tuple[str, ...]
    constraints: tuple[LinearConstraint, ...]
    objectives: tuple[Objective, ...]
    big_m: float
    notes: tuple[str, ...] = ()
    state_blocks: tuple[str, ...] = ()

    def constraints_in_family(self, family: str) -> tuple[LinearConstraint, ...]:
        return tuple(c for c in self.constraints if c.family == family)

    def to_text(self) -> str:
        lines = [f"\\ {self.name}", f"\\ big_m = {_fmt(self.big_m)}"]
        for note in self.notes:
            lines.append(f"\\ note: {note}")
        lines.append("OBJECTIVES")
        for objective in self.objectives:
            lines.append(objective.render())
        lines.append("CONSTRAINTS")
        seen_families: set[str] = set()
        for constraint in self.constraints:
            if constraint.family not in seen_families:
                seen_families.add(constraint.family)
                comment = _FAMILY_COMMENTS.get(constraint.family)
                if comment:
                    lines.append(f"\\ {comment}")
            lines.append(constraint.render())
        for index, block in enumerate(self.state_blocks, start=1):
            lines.append(f"\\ state {index} feasible-set block")
            lines.extend(block.rstrip("\n").split("\n"))
        lines.append("BOUNDS")
        for var in self.continuous_vars:
            lines.append(f"{var} free")
        lines.append("BINARIES")
        lines.extend(self.binary_vars)
        lines.append("END")
        return "\n".join(lines) + "\n"


def big_m(act: Act) -> float:
    """Smallest data-derived constant that slackens every relaxed constraint.

    One above the largest coordinate anywhere in the act: with the binary at
    1, any bound `b <= z + M` or `b <= b' + M` holds for all in-range values.
    """
    return 1.0 + max(c for s in act.per_state for b in s.beings for c in b.coords)


def _order_machinery(
    states: int, dimension: int, m_value: float
) -> tuple[list[str], list[LinearConstraint]]:
    binaries = [
        f"d_{l}_{lp}"
        for l in range(1, states + 1)
        for lp in range(1, states + 1)
        if l != lp
    ]
    constraints: list[LinearConstraint] = []
    for l in range(1, states + 1):
        for lp in range(1, states + 1):
            if l == lp:
                continue
            for h in range(1, dimension + 1):
                constraints.append(
                    LinearConstraint(
                        name=f"order_{l}_{lp}_{h}",
                        family=FAMILY_ORDER,
                        terms=(
                            (f"b_{l}_{h}", 1.0),
                            (f"b_{lp}_{h}", -1.0),
                            (f"d_{l}_{lp}", -m_value),
                        ),
                        rhs=0.0,
                    )
                )
    for l in range(1, states + 1):
        for lp in range(l + 1, states + 1):
            constraints.append(
                LinearConstraint(
                    name=f"order_antisymmetry_{l}_{lp}",
                    family=FAMILY_ANTISYMMETRY,
                    terms=((f"d_{l}_{lp}", 1.0), (f"d_{lp}_{l}", 1.0)),
                    rhs=1.0,
                )
            )
    return binaries, constraints


def _expected_objectives(p: ProbabilityVector, dimension: int) -> tuple[Objective, ...]:
    return tuple(
        Objective(
            name=f"value_{h}",
            terms=tuple((f"b_{l}_{h}", p[l - 1]) for l in range(1, len(p) + 1)),
        )
        for h in range(1, dimension + 1)
    )


def export_finite_model(act: Act, p: ProbabilityVector) -> MilpModel:
    """Concrete expected-mix model for finite capability sets.

    Per state, anchor-deactivation binaries `delta_l_n` keep at least one
    member's bound active on the aggregated being `b_l`; the chain-order
    binaries `d_l_lp` force a total order across states.  Objectives are the
    per-dimension expected values.
    """
    if len(p) != act.num_states:
        raise PreconditionError(
            f"act has {act.num_states} states but {len(p)} probabilities were given"
        )
    states, dimension = act.num_states, act.dimension
    m_value = big_m(act)

    continuous = [
        f"b_{l}_{h}" for l in range(1, states + 1) for h in range(1, dimension + 1)
    ]
    delta_binaries: list[str] = []
    constraints: list[LinearConstraint] = []

    for l, cs in enumerate(act.per_state, start=1):
        size = len(cs.beings)
        constraints.append(
            LinearConstraint(
                name=f"selection_cardinality_{l}",
                family=FAMILY_SELECTION_CARD,
                terms=tuple((f"delta_{l}_{n}", 1.0) for n in range(1, size + 1)),
                rhs=float(size - 1),
            )
        )
    for l, cs in enumerate(act.per_state, start=1):
        for n, member in enumerate(cs.beings, start=1):
            delta_binaries.append(f"delta_{l}_{n}")
            for h in range(1, dimension + 1):
                constraints.append(
                    LinearConstraint(
                        name=f"selection_bound_{l}_{n}_{h}",
                        family=FAMILY_SELECTION_BOUND,
                        terms=((f"b_{l}_{h}", 1.0), (f"delta_{l}_{n}", -m_value)),
                        rhs=member.coords[h - 1],
                    )
                )

    order_binaries, order_constraints = _order_machinery(states, dimension, m_value)
    constraints.extend(order_constraints)

    return MilpModel(
        name=f"expected-mix finite model: act {act.label!r}, "
        f"{states} states, {dimension} dimensions",
        continuous_vars=tuple(continuous),
        binary_vars=tuple(order_binaries + delta_binaries),
        constraints=tuple(constraints),
        objectives=_expected_objectives(p, dimension),
        big_m=m_value,
    )


def export_region_template(
    state_blocks: Sequence[str],
    p: ProbabilityVector,
    dimension: int,
    *,
    big_m_value: float = 1000.0,
) -> MilpModel:
    """Expected-mix template for compact per-state feasible regions.

    Each entry of `state_blocks` must be a self-contained constraint block
    declaring that state's feasible variables `z_l_h`; the wrapper binds the
    aggregated beings below them and adds the same chain-order machinery as
    the finite model.  The caller supplies a big-M valid for its regions.
    """
    states = len(p)
    if len(state_blocks) != states:
        raise PreconditionError(
            f"{len(state_blocks)} constraint blocks for {states} states"
        )
    continuous = [
        f"{base}_{l}_{h}"
        for base in ("b", "z")
        for l in range(1, states + 1)
        for h in range(1, dimension + 1)
    ]
    constraints = [
        LinearConstraint(
            name=f"region_bound_{l}_{h}",
            family=FAMILY_SELECTION_BOUND,
            terms=((f"b_{l}_{h}", 1.0), (f"z_{l}_{h}", -1.0)),
            rhs=0.0,
        )
        for l in range(1, states + 1)
        for h in range(1, dimension + 1)
    ]
    order_binaries, order_constraints = _order_machinery(states, dimension, big_m_value)
    constraints.extend(order_constraints)

    return MilpModel(
        name=f"expected-mix region template: {states} states, {dimension} dimensions",
        continuous_vars=tuple(continuous),
        binary_vars=tuple(order_binaries),
        constraints=tuple(constraints),
        objectives=_expected_objectives(p, dimension),
        big_m=big_m_value,
        state_blocks=tuple(state_blocks),
    )


def scalarize(model: MilpModel, weights: Sequence[float]) -> MilpModel:
    """Collapse the per-dimension objectives into one weighted sum.

    Weighted sums recover only supported maximal points; unsupported points
    of the frontier need epsilon-constraint style schemes, which are out of
    scope here.
    """
    if len(weights) != len(model.objectives):
        raise PreconditionError(
            f"{len(weights)} weights for {len(model.objectives)} objectives"
        )
    for i, w in enumerate(weights):
        if not w > 0:
            raise PreconditionError(f"weight {i} must be strictly positive, got {w!r}")
    combined: dict[str, float] = {}
    for objective, w in zip(model.objectives, weights):
        for var, coeff in objective.terms:
            combined[var] = combined.get(var, 0.0) + w * coeff
    scalar = Objective(name="scalarized", terms=tuple(combined.items()))
    return replace(
        model,
        objectives=(scalar,),
        notes=model.notes
        + ("weighted-sum scalarization recovers only supported maximal points",),
    )


def certificate_assignment(act: Act, cert: ChainCertificate) -> dict[str, float]:
    """Variable assignment realizing one expected-mix point in the finite model.

    Continuous values come from the certificate's adjusted beings; the anchor
    member's deactivation binary is 0 (all others 1) and the order binaries
    follow the certificate's chain.
    """
    assignment: dict[str, float] = {}
    for l, adjusted in enumerate(cert.adjusted, start=1):
        for h, value in enumerate(adjusted.coords, start=1):
            assignment[f"b_{l}_{h}"] = value
    for l, cs in enumerate(act.per_state, start=1):
        anchor = cert.selection[l - 1]
        anchor_index = _member_index(cs.beings, anchor)
        for n in range(1, len(cs.beings) + 1):
            assignment[f"delta_{l}_{n}"] = 0.0 if n == anchor_index else 1.0
    for (l, lp), value in cert.order_binaries().items():
        assignment[f"d_{l + 1}_{lp + 1}"] = float(value)
    return assignment


def _member_index(members: Sequence[Being], anchor: Being) -> int:
    for n, member in enumerate(members, start=1):
        if member.coords == anchor.coords:
            return n
    raise ValueError(f"anchor {anchor} is not a member of its state's set")


def check_witness(
    model: MilpModel, assignment: Mapping[str, float], tol: float = 1e-9
) -> list[str]:
    """Names of model constraints the assignment violates (empty when feasible)."""
    return [c.name for c in model.constraints if not c.satisfied(assignment, tol)]
