"""Algebraic suppression predicates and event classification.

Given the eigenvalue attached to each column of a symmetry-built unitary,
an output configuration maps to the multiset of eigenvalues of its occupied
modes. Two exact tests follow:

* bosons:   the product of that multiset differs from 1
* fermions: the multiset differs from the one fixed by the input

Either verdict certifies a transition probability of exactly zero for every
member of the unitary class. Both tests run on integer fractions only; no
float ever enters a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .fock import check_occupation, occupation_to_assignment
from .permutations import Permutation, RootOfUnity, is_invariant

#: Probabilities below this are treated as zero when classifying events.
CLASSIFY_TOL = 1e-10

#: Multiset of eigenvalues, canonically sorted by phase fraction.
EigenvalueDistribution = tuple[RootOfUnity, ...]


def _as_roots(values) -> tuple[RootOfUnity, ...]:
    out = []
    for v in values:
        if not isinstance(v, RootOfUnity):
            raise TypeError(f"expected RootOfUnity entries, got {type(v).__name__}")
        out.append(v)
    return tuple(out)


def final_distribution(eigenvalues, occupation_out) -> EigenvalueDistribution:
    """Eigenvalue multiset picked out by the occupied output modes."""
    values = _as_roots(eigenvalues)
    s = check_occupation(occupation_out)
    if len(s) != len(values):
        raise ValueError(
            f"occupation over {len(s)} modes but {len(values)} eigenvalues"
        )
    picked = [values[mode - 1] for mode in occupation_to_assignment(s)]
    return tuple(sorted(picked))


def initial_distribution(p: Permutation, occupation_in) -> EigenvalueDistribution:
    """Eigenvalue multiset fixed by a fermionic input: every populated cycle
    of length l contributes all l-th roots of unity.

    Requires single occupancy and invariance, which together force each cycle
    to be entirely filled or entirely empty.
    """
    r = check_occupation(occupation_in, fermionic=True)
    if not is_invariant(p, r):
        raise ValueError("input occupation is not invariant under the permutation")
    values: list[RootOfUnity] = []
    for cycle in p.cycles0():
        if r[cycle[0]]:
            values.extend(RootOfUnity(k, len(cycle)) for k in range(len(cycle)))
    return tuple(sorted(values))


def phase_sum(distribution: EigenvalueDistribution) -> Fraction:
    """Exact sum of the phase fractions, reduced modulo one turn."""
    return sum((v.turns for v in distribution), Fraction(0)) % 1


def boson_suppressed(eigenvalues, occupation_out) -> bool:
    """True iff the eigenvalue product over the output differs from 1,
    certifying an exactly vanishing bosonic probability."""
    return phase_sum(final_distribution(eigenvalues, occupation_out)) != 0


def fermion_suppressed(p: Permutation, occupation_in, eigenvalues, occupation_out) -> bool:
    """True iff the output eigenvalue multiset differs from the input one,
    certifying an exactly vanishing fermionic probability."""
    final = final_distribution(eigenvalues, occupation_out)
    check_occupation(occupation_out, fermionic=True)
    return final != initial_distribution(p, occupation_in)


def transposition_count(p: Permutation, occupation_in) -> int:
    """Parity witness w for the legacy DFT law: particle number minus the
    number of populated cycles, i.e. the transpositions needed to realise the
    permutation restricted to the occupied modes."""
    r = check_occupation(occupation_in, fermionic=True)
    if not is_invariant(p, r):
        raise ValueError("input occupation is not invariant under the permutation")
    populated = sum(1 for cycle in p.cycles0() if r[cycle[0]])
    return sum(r) - populated


def old_fourier_fermion_suppressed(eigenvalues, occupation_out, w: int) -> bool:
    """The older DFT fermion criterion: product of the output eigenvalues
    differs from (-1)^w. Kept for comparison; it predicts only a subset of
    the events the multiset test catches."""
    target = Fraction(w, 2) % 1
    return phase_sum(final_distribution(eigenvalues, occupation_out)) != target


class EventClass(Enum):
    """Empirical event classes: IV is transmitted; I and II vanish through
    single-particle dynamics (II law-predicted, I not); III vanishes through
    genuine many-particle interference."""

    ALLOWED = "IV"
    CLASS_I = "I"
    CLASS_II = "II"
    CLASS_III = "III"


def classify_event(law_suppressed: bool, p_particle: float, p_dist: float,
                   tol: float = CLASSIFY_TOL) -> EventClass:
    """Sort one output event into classes I/II/III/IV.

    Law-suppressed events split on the distinguishable probability: above
    ``tol`` the vanishing needs many-particle interference (III), below it
    the single-particle dynamics already forbids the event (II). Events that
    vanish for both the coherent and the distinguishable case without a law
    verdict are class I; everything else is transmitted (IV).
    """
    if law_suppressed:
        return EventClass.CLASS_III if p_dist > tol else EventClass.CLASS_II
    if p_particle <= tol and p_dist <= tol:
        return EventClass.CLASS_I
    return EventClass.ALLOWED


@dataclass(frozen=True)
class EventVerdict:
    """Per-output record: law verdicts, probabilities, empirical class."""

    occupation_out: tuple[int, ...]
    distribution: EigenvalueDistribution
    law_suppressed_boson: bool
    law_suppressed_fermion: bool | None = None
    p_boson: float | None = None
    p_fermion: float | None = None
    p_dist: float | None = None
    event_class: EventClass | None = None
