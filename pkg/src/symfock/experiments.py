"""Reproducible experiment runners.

Three families:

* random-eigenbasis census: average transition probabilities over many
  seeded eigenbasis rotations, attach law verdicts and event classes
* DFT law comparison: the multiset fermion test against the older parity
  test, with exact probabilities as referee
* robustness fits: mean deviation from perfect suppression against the
  noise amplitude, for perturbed unitaries and for partial
  distinguishability, fitted on a log-log grid

Every runner is deterministic given its seed: per-task generators are
derived from (seed, task index), reductions run in task order with
compensated summation, and worker processes only change wall time, never a
single output bit.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial, prod

import numpy as np

from . import __version__
from .fock import ParticleType, check_occupation, enumerate_outputs, particle_count
from .permutations import Permutation, RootOfUnity, cycle_decompose
from .scattering import (
    PerturbationModel,
    perturb_unitary,
    prob_boson,
    prob_distinguishable,
    prob_fermion,
    prob_partial,
    repair_distinguishability,
    validate_distinguishability,
)
from .suppression import (
    CLASSIFY_TOL,
    EventVerdict,
    boson_suppressed,
    classify_event,
    fermion_suppressed,
    final_distribution,
    old_fourier_fermion_suppressed,
    transposition_count,
)
from .unitaries import UnitarySpec, build_unitary, fourier_symmetry, fourier_unitary

RNG_DESCRIPTION = "numpy.random.default_rng (PCG64), per-task streams via SeedSequence(seed, index)"

#: Mean deviations below this floor are dropped from log-log fits.
FIT_FLOOR = 1e-18


def derive_seed(seed: int, *indices: int) -> int:
    """Stable per-task seed from the master seed and task indices."""
    state = np.random.SeedSequence([int(seed), *map(int, indices)]).generate_state(1, np.uint64)
    return int(state[0])


def require_invariant(p: Permutation, occupation) -> None:
    """Raise with the offending cycle named if the occupation breaks the symmetry."""
    occ = check_occupation(occupation)
    if len(occ) != p.n:
        raise ValueError(f"occupation over {len(occ)} modes, permutation over {p.n}")
    for cycle in cycle_decompose(p):
        values = {occ[mode - 1] for mode in cycle}
        if len(values) > 1:
            raise ValueError(f"input state not invariant under cycle {cycle}")


class _KahanMean:
    """Streaming compensated mean/max over equally shaped rows, in arrival order."""

    def __init__(self, width: int):
        self.total = np.zeros(width)
        self._comp = np.zeros(width)
        self.peak = np.zeros(width)
        self.count = 0

    def add(self, row: np.ndarray) -> None:
        y = row - self._comp
        t = self.total + y
        self._comp = (t - self.total) - y
        self.total = t
        np.maximum(self.peak, row, out=self.peak)
        self.count += 1

    def mean(self) -> np.ndarray:
        return self.total / self.count


# --- random-eigenbasis census ------------------------------------------------

@dataclass(frozen=True)
class CensusConfig:
    """Average probabilities for one symmetric input over random eigenbases."""

    permutation: Permutation
    input_state: tuple[int, ...]
    num_bases: int = 100
    seed: int = 0
    types: tuple[ParticleType, ...] = (
        ParticleType.BOSON,
        ParticleType.FERMION,
        ParticleType.DISTINGUISHABLE,
    )
    theta_phases: tuple[float, ...] | None = None
    sigma_phases: tuple[float, ...] | None = None
    workers: int = 1

    def __post_init__(self):
        if self.num_bases < 1:
            raise ValueError("need at least one eigenbasis")
        require_invariant(self.permutation, self.input_state)
        if ParticleType.FERMION in self.types:
            check_occupation(self.input_state, fermionic=True)


@dataclass
class CensusResult:
    eigenvalues: tuple[RootOfUnity, ...]
    tables: dict[ParticleType, tuple[EventVerdict, ...]]
    max_suppressed: dict[ParticleType, float]
    metadata: dict


def _census_basis(cfg: CensusConfig, basis_index: int,
                  boson_outputs, fermion_outputs) -> tuple[np.ndarray, ...]:
    spec = UnitarySpec(
        cfg.permutation,
        theta_phases=cfg.theta_phases,
        sigma_phases=cfg.sigma_phases,
        rotation_seed=derive_seed(cfg.seed, basis_index),
    )
    u = build_unitary(spec).matrix
    r = cfg.input_state
    want_bosonic = ParticleType.BOSON in cfg.types or ParticleType.DISTINGUISHABLE in cfg.types
    pb = pd = pf = pdf = np.empty(0)
    if want_bosonic:
        pb = np.array([prob_boson(u, r, s) for s in boson_outputs])
        pd = np.array([prob_distinguishable(u, r, s) for s in boson_outputs])
    if ParticleType.FERMION in cfg.types:
        pf = np.array([prob_fermion(u, r, s) for s in fermion_outputs])
        pdf = np.array([prob_distinguishable(u, r, s) for s in fermion_outputs])
        pdf = pdf / pdf.sum()  # distinguishable reference on singly occupied outputs
    return pb, pd, pf, pdf


def _census_basis_star(args):
    return _census_basis(*args)


def run_mean_probabilities(cfg: CensusConfig) -> CensusResult:
    """Average P over ``num_bases`` seeded eigenbasis rotations.

    Returns one verdict row per output configuration and particle type, with
    mean probabilities, the exact law verdicts (identical for every basis,
    since rotations never touch the eigenvalue diagonal) and the empirical
    event class derived from the means.
    """
    started = time.perf_counter()
    p = cfg.permutation
    r = cfg.input_state
    n_particles = particle_count(r)

    eigenvalues = build_unitary(UnitarySpec(p)).eigenvalues
    boson_outputs = list(enumerate_outputs(p.n, n_particles, ParticleType.BOSON))
    fermion_outputs = (
        list(enumerate_outputs(p.n, n_particles, ParticleType.FERMION))
        if ParticleType.FERMION in cfg.types
        else []
    )

    acc = {
        "pb": _KahanMean(len(boson_outputs)),
        "pd": _KahanMean(len(boson_outputs)),
        "pf": _KahanMean(len(fermion_outputs)),
        "pdf": _KahanMean(len(fermion_outputs)),
    }
    tasks = ((cfg, b, boson_outputs, fermion_outputs) for b in range(cfg.num_bases))
    if cfg.workers > 1:
        chunk = max(1, cfg.num_bases // (cfg.workers * 8))
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = pool.map(_census_basis_star, tasks, chunksize=chunk)
            for pb, pd, pf, pdf in results:
                for key, row in zip(("pb", "pd", "pf", "pdf"), (pb, pd, pf, pdf)):
                    if row.size:
                        acc[key].add(row)
    else:
        for task in tasks:
            pb, pd, pf, pdf = _census_basis_star(task)
            for key, row in zip(("pb", "pd", "pf", "pdf"), (pb, pd, pf, pdf)):
                if row.size:
                    acc[key].add(row)

    tables: dict[ParticleType, tuple[EventVerdict, ...]] = {}
    max_suppressed: dict[ParticleType, float] = {}

    if ParticleType.BOSON in cfg.types or ParticleType.DISTINGUISHABLE in cfg.types:
        mean_pb, mean_pd = acc["pb"].mean(), acc["pd"].mean()
        peak_pb = acc["pb"].peak
        law = [boson_suppressed(eigenvalues, s) for s in boson_outputs]
        if ParticleType.BOSON in cfg.types:
            rows = tuple(
                EventVerdict(
                    occupation_out=s,
                    distribution=final_distribution(eigenvalues, s),
                    law_suppressed_boson=lb,
                    p_boson=float(mpb),
                    p_dist=float(mpd),
                    event_class=classify_event(lb, float(mpb), float(mpd)),
                )
                for s, lb, mpb, mpd in zip(boson_outputs, law, mean_pb, mean_pd)
            )
            tables[ParticleType.BOSON] = rows
            max_suppressed[ParticleType.BOSON] = float(
                max((peak_pb[i] for i in range(len(law)) if law[i]), default=0.0)
            )
        if ParticleType.DISTINGUISHABLE in cfg.types:
            tables[ParticleType.DISTINGUISHABLE] = tuple(
                EventVerdict(
                    occupation_out=s,
                    distribution=final_distribution(eigenvalues, s),
                    law_suppressed_boson=lb,
                    p_dist=float(mpd),
                    event_class=classify_event(False, float(mpd), float(mpd)),
                )
                for s, lb, mpd in zip(boson_outputs, law, mean_pd)
            )

    if ParticleType.FERMION in cfg.types:
        mean_pf, mean_pdf = acc["pf"].mean(), acc["pdf"].mean()
        peak_pf = acc["pf"].peak
        law_f = [fermion_suppressed(p, r, eigenvalues, s) for s in fermion_outputs]
        rows = tuple(
            EventVerdict(
                occupation_out=s,
                distribution=final_distribution(eigenvalues, s),
                law_suppressed_boson=boson_suppressed(eigenvalues, s),
                law_suppressed_fermion=lf,
                p_fermion=float(mpf),
                p_dist=float(mpd),
                event_class=classify_event(lf, float(mpf), float(mpd)),
            )
            for s, lf, mpf, mpd in zip(fermion_outputs, law_f, mean_pf, mean_pdf)
        )
        tables[ParticleType.FERMION] = rows
        max_suppressed[ParticleType.FERMION] = float(
            max((peak_pf[i] for i in range(len(law_f)) if law_f[i]), default=0.0)
        )

    metadata = {
        "experiment": "mean-probabilities",
        "permutation": p.cycle_string(),
        "input_state": list(r),
        "num_bases": cfg.num_bases,
        "seed": cfg.seed,
        "types": [t.value for t in cfg.types],
        "library_version": __version__,
        "rng": RNG_DESCRIPTION,
        "timing_seconds": time.perf_counter() - started,
    }
    return CensusResult(eigenvalues, tables, max_suppressed, metadata)


# --- DFT comparison ------------------------------------------------------------

@dataclass
class FourierComparison:
    n: int
    m: int
    input_state: tuple[int, ...]
    eigenvalues: tuple[RootOfUnity, ...]
    boson_rows: tuple[EventVerdict, ...]
    fermion_rows: tuple[EventVerdict, ...]
    old_fermion_flags: tuple[bool, ...]
    transpositions: int | None
    witnesses: tuple[tuple[int, ...], ...]
    metadata: dict

    @property
    def counts(self) -> dict:
        new = sum(1 for row in self.fermion_rows if row.law_suppressed_fermion)
        old = sum(1 for flag in self.old_fermion_flags if flag)
        return {
            "fermion_new_law": new,
            "fermion_old_law": old,
            "fermion_new_not_old": len(self.witnesses),
            "boson_law": sum(1 for row in self.boson_rows if row.law_suppressed_boson),
        }


def run_fourier_comparison(n: int, m: int, input_state) -> FourierComparison:
    """Exact verdict tables for the n-mode DFT under the shift symmetry of
    order m, with the legacy parity criterion alongside the multiset one.

    The fermionic comparison runs only for singly occupied inputs; the
    witnesses list holds every output the multiset test suppresses that the
    parity test misses.
    """
    started = time.perf_counter()
    perm, eigenvalues = fourier_symmetry(n, m)
    require_invariant(perm, input_state)
    r = check_occupation(input_state)
    u = fourier_unitary(n)
    n_particles = sum(r)

    boson_rows = []
    for s in enumerate_outputs(n, n_particles, ParticleType.BOSON):
        lb = boson_suppressed(eigenvalues, s)
        pb = prob_boson(u, r, s)
        pd = prob_distinguishable(u, r, s)
        boson_rows.append(
            EventVerdict(
                occupation_out=s,
                distribution=final_distribution(eigenvalues, s),
                law_suppressed_boson=lb,
                p_boson=pb,
                p_dist=pd,
                event_class=classify_event(lb, pb, pd),
            )
        )

    fermion_rows: list[EventVerdict] = []
    old_flags: list[bool] = []
    witnesses: list[tuple[int, ...]] = []
    w = None
    if n_particles <= n and all(x <= 1 for x in r):
        w = transposition_count(perm, r)
        for s in enumerate_outputs(n, n_particles, ParticleType.FERMION):
            lf = fermion_suppressed(perm, r, eigenvalues, s)
            old = old_fourier_fermion_suppressed(eigenvalues, s, w)
            pf = prob_fermion(u, r, s)
            pd = prob_distinguishable(u, r, s)
            fermion_rows.append(
                EventVerdict(
                    occupation_out=s,
                    distribution=final_distribution(eigenvalues, s),
                    law_suppressed_boson=boson_suppressed(eigenvalues, s),
                    law_suppressed_fermion=lf,
                    p_fermion=pf,
                    p_dist=pd,
                    event_class=classify_event(lf, pf, pd),
                )
            )
            old_flags.append(old)
            if lf and not old:
                witnesses.append(s)

    metadata = {
        "experiment": "fourier-comparison",
        "modes": n,
        "symmetry_order": m,
        "input_state": list(r),
        "transpositions": w,
        "library_version": __version__,
        "timing_seconds": time.perf_counter() - started,
    }
    return FourierComparison(
        n, m, r, eigenvalues, tuple(boson_rows), tuple(fermion_rows),
        tuple(old_flags), w, tuple(witnesses), metadata,
    )


# --- robustness fits -------------------------------------------------------

@dataclass
class RobustnessFit:
    """Log-log fit of the mean suppression deviation against the noise scale.

    ``exponent`` is the free least-squares slope; ``prefactor`` is the
    geometric mean of measured/grid**theory_exponent, i.e. the coefficient
    under the first-order model, compared against ``predicted_prefactor``.
    """

    grid: tuple[float, ...]
    measured: tuple[float, ...]
    exponent: float
    prefactor: float
    predicted_prefactor: float
    theory_exponent: float
    samples: int
    metadata: dict


def _check_grid(grid) -> tuple[float, ...]:
    grid = tuple(float(g) for g in grid)
    if len(grid) < 4:
        raise ValueError("need at least four grid points for a fit")
    if any(g <= 0 for g in grid) or any(a >= b for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly positive and ascending")
    return grid


def _fit_loglog(grid, measured, theory_exponent):
    points = [(g, m) for g, m in zip(grid, measured) if m > FIT_FLOOR]
    if len(points) < 2:
        raise ValueError("too few grid points above the numerical floor to fit")
    lx = np.log([g for g, _ in points])
    ly = np.log([m for _, m in points])
    exponent = float(np.polyfit(lx, ly, 1)[0])
    prefactor = float(np.exp(np.mean(ly - theory_exponent * lx)))
    return exponent, prefactor


def _suppressed_target(eigenvalues, permutation, input_state, target_output,
                       particle: ParticleType) -> None:
    if particle is ParticleType.BOSON:
        if not boson_suppressed(eigenvalues, target_output):
            raise ValueError("target output is not law-suppressed for bosons")
    elif particle is ParticleType.FERMION:
        if permutation is None:
            raise ValueError("fermionic target needs the symmetry permutation")
        if not fermion_suppressed(permutation, input_state, eigenvalues, target_output):
            raise ValueError("target output is not law-suppressed for fermions")
    else:
        raise ValueError("robustness targets are bosonic or fermionic")


def run_unitary_robustness(
    unitary,
    eigenvalues,
    input_state,
    target_output,
    particle: ParticleType,
    grid,
    samples: int = 10_000,
    seed: int = 0,
    distribution: str = "ring",
    permutation: Permutation | None = None,
) -> RobustnessFit:
    """Mean deviation from perfect suppression under entrywise unitary noise.

    For each grid value of the average deviation modulus, draws ``samples``
    perturbed matrices and averages the exact transition probability of the
    law-suppressed target. First-order theory: quadratic in the noise with
    coefficient N * (prod s_j!/prod r_k!) * P_D.
    """
    started = time.perf_counter()
    grid = _check_grid(grid)
    r = check_occupation(input_state)
    s = check_occupation(target_output)
    _suppressed_target(eigenvalues, permutation, r, s, particle)
    p_dist = prob_distinguishable(unitary, r, s)
    if p_dist <= CLASSIFY_TOL:
        raise ValueError("distinguishable probability vanishes; prediction degenerate")
    predicted = (
        particle_count(r)
        * prod(factorial(x) for x in s)
        / prod(factorial(x) for x in r)
        * p_dist
    )
    prob = prob_boson if particle is ParticleType.BOSON else prob_fermion

    measured = []
    for gi, g in enumerate(grid):
        model = PerturbationModel(g, distribution=distribution)
        rng = np.random.default_rng(derive_seed(seed, gi))
        acc = _KahanMean(1)
        for _ in range(samples):
            acc.add(np.array([prob(perturb_unitary(unitary, model, rng), r, s)]))
        measured.append(float(acc.mean()[0]))

    exponent, prefactor = _fit_loglog(grid, measured, 2.0)
    metadata = {
        "experiment": "unitary-robustness",
        "particle": particle.value,
        "input_state": list(r),
        "target_output": list(s),
        "grid": list(grid),
        "delta_distribution": distribution,
        "p_dist": p_dist,
        "seed": seed,
        "samples": samples,
        "library_version": __version__,
        "rng": RNG_DESCRIPTION,
        "timing_seconds": time.perf_counter() - started,
    }
    return RobustnessFit(grid, tuple(measured), exponent, prefactor, predicted, 2.0, samples, metadata)


#: How the random Gram matrices for the distinguishability sweep are drawn.
GRAM_ENSEMBLES = ("independent", "gram")


def sample_distinguishability(n: int, mean_eps: float, rng: np.random.Generator,
                              ensemble: str = "independent",
                              eta_scale: float = 1.0) -> tuple[np.ndarray, bool]:
    """One random distinguishability matrix with average deficit ``mean_eps``.

    ``independent`` perturbs every off-diagonal entry as (1-eps)*exp(i*eta)
    with eps uniform of mean ``mean_eps`` and eta zero-mean, bounded by
    ``eta_scale * mean_eps``; the result generically violates positivity at
    first order and is projected back (flag reports a repair). ``gram``
    builds an exact Gram matrix of almost-parallel unit vectors, which needs
    no repair by construction.
    """
    if ensemble == "independent":
        eps = rng.uniform(0.0, 2.0 * mean_eps, size=(n, n))
        eps = (eps + eps.T) / 2.0
        eta = rng.uniform(-eta_scale * mean_eps, eta_scale * mean_eps, size=(n, n))
        eta = (eta - eta.T) / 2.0
        s = (1.0 - eps) * np.exp(1j * eta)
        np.fill_diagonal(s, 1.0)
        try:
            validate_distinguishability(s)
            return s, False
        except ValueError:
            repaired, _ = repair_distinguishability(s)
            return repaired, True
    if ensemble == "gram":
        # internal states cos(t)|0> + exp(i phi) sin(t)|1>: PSD by construction
        eps_j = rng.uniform(0.0, 2.0 * mean_eps, size=n)
        t = np.arcsin(np.sqrt(np.minimum(eps_j, 1.0)))
        phi = rng.uniform(0.0, 2.0 * np.pi, size=n)
        a = np.cos(t)
        b = np.sin(t) * np.exp(1j * phi)
        s = np.outer(a, a) + np.outer(b, np.conj(b))
        np.fill_diagonal(s, 1.0)
        return s, False
    raise ValueError(f"unknown ensemble {ensemble!r}")


def run_distinguishability_robustness(
    unitary,
    eigenvalues,
    input_state,
    target_output,
    particle: ParticleType,
    grid,
    samples: int = 2_000,
    seed: int = 0,
    ensemble: str = "independent",
    eta_scale: float = 1.0,
    permutation: Permutation | None = None,
) -> RobustnessFit:
    """Mean deviation from perfect suppression under partial distinguishability.

    First-order theory: linear in the mean deficit with coefficient N * P_D.
    PSD repairs of the sampled Gram matrices are counted in the metadata.
    """
    started = time.perf_counter()
    grid = _check_grid(grid)
    r = check_occupation(input_state)
    s = check_occupation(target_output)
    _suppressed_target(eigenvalues, permutation, r, s, particle)
    p_dist = prob_distinguishable(unitary, r, s)
    if p_dist <= CLASSIFY_TOL:
        raise ValueError("distinguishable probability vanishes; prediction degenerate")
    predicted = particle_count(r) * p_dist
    n = np.asarray(unitary).shape[0]

    measured = []
    repairs = 0
    for gi, g in enumerate(grid):
        rng = np.random.default_rng(derive_seed(seed, gi))
        acc = _KahanMean(1)
        for _ in range(samples):
            gram, repaired = sample_distinguishability(n, g, rng, ensemble, eta_scale)
            repairs += repaired
            acc.add(np.array([prob_partial(unitary, r, s, gram, particle)]))
        measured.append(float(acc.mean()[0]))

    exponent, prefactor = _fit_loglog(grid, measured, 1.0)
    metadata = {
        "experiment": "distinguishability-robustness",
        "particle": particle.value,
        "input_state": list(r),
        "target_output": list(s),
        "grid": list(grid),
        "ensemble": ensemble,
        "eta_scale": eta_scale,
        "psd_repairs": repairs,
        "p_dist": p_dist,
        "seed": seed,
        "samples": samples,
        "library_version": __version__,
        "rng": RNG_DESCRIPTION,
        "timing_seconds": time.perf_counter() - started,
    }
    return RobustnessFit(grid, tuple(measured), exponent, prefactor, predicted, 1.0, samples, metadata)
