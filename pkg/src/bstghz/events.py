"""Events, spreads, and the graded notions of consistency.

An event is a named nonempty set of point events.  The roles matter:

* an *initial* event is a nonempty upper bounded chain, and a history is
  said to realize it only by containing it entirely;
* an *outcome* event is a nonempty lower bounded chain, and a history
  realizes it by merely overlapping it;
* a *stable* event is both, and additionally lies inside every history it
  overlaps, so "begins to occur" and "occurs" coincide for it.

A spread couples one initial event to a family of mutually exclusive
outcome events: the initial strictly precedes every outcome pointwise,
every history containing the initial overlaps some outcome, and no
history overlaps two distinct outcomes.  An n-spread is an ordered tuple
of spreads; its outcome vectors (one outcome per spread, enumerated
lexicographically in declared order) are the joint results one can ask
consistency questions about.  Consistency itself is existential: some
history realizes everything at once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidSpread, MisclassifiedEvent
from .model import CausalModel, PointEventId, ValidationReport, is_chain


@dataclass(frozen=True)
class Event:
    """A named, nonempty set of point events."""

    name: str
    members: frozenset[PointEventId]

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("event name must be nonempty")
        if not self.members:
            raise ValueError(f"event {self.name!r} has no members")


@dataclass(frozen=True)
class EventClassification:
    is_initial: bool
    is_outcome: bool
    is_stable: bool


@dataclass(frozen=True)
class Spread:
    """One initial event branching into mutually exclusive outcome events.

    ``outcomes`` is a tuple because the declared order fixes how outcome
    vectors are enumerated.
    """

    initial: Event
    outcomes: tuple[Event, ...]

    def __post_init__(self) -> None:
        if not self.outcomes:
            raise ValueError(
                f"spread at {self.initial.name!r} needs at least one outcome"
            )
        names = [o.name for o in self.outcomes]
        if len(set(names)) != len(names):
            raise ValueError(
                f"spread at {self.initial.name!r} repeats an outcome name"
            )


@dataclass(frozen=True)
class NSpread:
    """An ordered tuple of spreads treated as one joint arrangement."""

    spreads: tuple[Spread, ...]

    def __post_init__(self) -> None:
        if not self.spreads:
            raise ValueError("an n-spread needs at least one spread")

    @property
    def initials(self) -> tuple[Event, ...]:
        return tuple(s.initial for s in self.spreads)


@dataclass(frozen=True)
class OutcomeVector:
    """One outcome event per spread of an n-spread, in spread order."""

    terms: tuple[Event, ...]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.terms)

    def label(self) -> str:
        return ",".join(self.names)


@dataclass(frozen=True)
class GradeReport:
    """Consistency grading of an n-spread.

    ``minimal``: the initials alone are consistent.  ``one_consistent``:
    additionally each single outcome of each spread is consistent with the
    initials.  ``maximal``: every outcome vector is consistent.
    """

    minimal: bool
    one_consistent: bool
    maximal: bool
    vector_count: int
    inconsistent_vectors: tuple[OutcomeVector, ...]


def classify_event(model: CausalModel, event: Event) -> EventClassification:
    """Classify an event as initial / outcome / stable in the model."""
    model.require_points(event.members)
    chain = is_chain(model, event.members)
    initial = chain and _upper_bounded(model, event.members)
    outcome = chain and _lower_bounded(model, event.members)
    stable = (
        initial
        and outcome
        and all(
            event.members <= h.members
            for h in model.histories
            if h.members & event.members
        )
    )
    return EventClassification(
        is_initial=initial, is_outcome=outcome, is_stable=stable
    )


def _upper_bounded(model: CausalModel, members: frozenset[PointEventId]) -> bool:
    return any(all(model.le(m, b) for m in members) for b in model.points)


def _lower_bounded(model: CausalModel, members: frozenset[PointEventId]) -> bool:
    return any(all(model.le(b, m) for m in members) for b in model.points)


def _check_roles(
    model: CausalModel,
    initials: Sequence[Event],
    outcomes: Sequence[Event],
) -> None:
    for e in initials:
        model.require_points(e.members)
        if not (is_chain(model, e.members) and _upper_bounded(model, e.members)):
            raise MisclassifiedEvent(f"{e.name!r} is not an initial event")
    for e in outcomes:
        model.require_points(e.members)
        if not (is_chain(model, e.members) and _lower_bounded(model, e.members)):
            raise MisclassifiedEvent(f"{e.name!r} is not an outcome event")


def is_consistent(
    model: CausalModel,
    initials: Iterable[Event] = (),
    outcomes: Iterable[Event] = (),
) -> bool:
    """True when one history contains every initial and overlaps every
    outcome.

    The asymmetry is deliberate: initials must happen in full, outcomes
    need only have begun.
    """
    ini = tuple(initials)
    out = tuple(outcomes)
    _check_roles(model, ini, out)
    return any(
        all(e.members <= h.members for e in ini)
        and all(e.members & h.members for e in out)
        for h in model.histories
    )


def validate_spread(model: CausalModel, spread: Spread) -> ValidationReport:
    """Check the three defining conditions of a spread.

    (i) every point of the initial strictly precedes every point of every
    outcome; (ii) every history containing the initial overlaps some
    outcome; (iii) no history overlaps two distinct outcomes.  Failures
    are reported, not raised.
    """
    name = f"spread {spread.initial.name}"
    violations: list[str] = []

    try:
        _check_roles(model, [spread.initial], spread.outcomes)
    except MisclassifiedEvent as exc:
        return ValidationReport(
            check=name, status="fail", violations=(str(exc),)
        )

    for o in spread.outcomes:
        for pi in sorted(spread.initial.members):
            for po in sorted(o.members):
                if not model.lt(pi, po):
                    violations.append(
                        f"(i) initial point {pi} does not strictly precede "
                        f"{po} of outcome {o.name}"
                    )
    for h in model.histories:
        if spread.initial.members <= h.members:
            if not any(o.members & h.members for o in spread.outcomes):
                violations.append(
                    f"(ii) history {h.top} contains the initial but "
                    f"overlaps no outcome"
                )
        hit = [o.name for o in spread.outcomes if o.members & h.members]
        if len(hit) > 1:
            violations.append(
                f"(iii) history {h.top} overlaps outcomes {', '.join(hit)}"
            )
    return ValidationReport(
        check=name,
        status="fail" if violations else "pass",
        violations=tuple(violations),
    )


def _require_valid(model: CausalModel, ns: NSpread) -> None:
    for s in ns.spreads:
        report = validate_spread(model, s)
        if not report.ok:
            raise InvalidSpread(
                f"spread at {s.initial.name!r} is invalid: "
                + "; ".join(report.violations)
            )


def enumerate_outcome_vectors(ns: NSpread) -> tuple[OutcomeVector, ...]:
    """All outcome vectors, lexicographic in the declared outcome orders."""
    return tuple(
        OutcomeVector(terms=combo)
        for combo in itertools.product(*[s.outcomes for s in ns.spreads])
    )


def consistency_grade(model: CausalModel, ns: NSpread) -> GradeReport:
    """Grade an n-spread: minimal, 1-consistent, maximally consistent.

    Raises :class:`InvalidSpread` when a constituent spread fails
    validation.  The implication chain maximal => 1-consistent => minimal
    is asserted on every grading.
    """
    _require_valid(model, ns)
    initials = list(ns.initials)
    minimal = is_consistent(model, initials, ())
    one = minimal and all(
        is_consistent(model, initials, (o,))
        for s in ns.spreads
        for o in s.outcomes
    )
    vectors = enumerate_outcome_vectors(ns)
    inconsistent = tuple(
        v for v in vectors if not is_consistent(model, (), v.terms)
    )
    maximal = not inconsistent
    assert (not maximal or one) and (not one or minimal)
    return GradeReport(
        minimal=minimal,
        one_consistent=one,
        maximal=maximal,
        vector_count=len(vectors),
        inconsistent_vectors=inconsistent,
    )


def is_spacelike(model: CausalModel, ns: NSpread) -> bool:
    """Minimally consistent, with no initial preceding a foreign outcome.

    The second clause: no point of the initial of one spread strictly
    precedes any point of any outcome of a *different* spread of the
    n-spread.
    """
    _require_valid(model, ns)
    if not is_consistent(model, ns.initials, ()):
        return False
    for i, si in enumerate(ns.spreads):
        for j, sj in enumerate(ns.spreads):
            if i == j:
                continue
            for pi in si.initial.members:
                for o in sj.outcomes:
                    if any(model.lt(pi, po) for po in o.members):
                        return False
    return True
