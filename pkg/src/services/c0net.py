#!/usr/bin/env python3
"""
FIN_k and the positive sphere of c_0.

A k-vector s corresponds to the grid vector Theta^{-1}(s) with entries
eps^(k - s(n)); these grid vectors form a delta-net of the norm-one
positive vectors. Gamma rounds an arbitrary positive vector back to FIN_{<=k}
by reading off, per coordinate, the level interval it falls in. Staircase
functions extend to positive vectors through Gamma.
"""

import logging
from typing import Callable, Hashable, List, Optional, Sequence, Union

import numpy as np
from tqdm import tqdm

from src.models.errors import AmbientMismatchError, DegenerateInputError, GridError, NetDomainError
from src.models.net import LevelIntervals, NetParams, NetReport, PositiveVector
from src.models.partition import PartitionOracle
from src.models.staircase import FamilyMember, MemberKind, StaircaseValues
from src.models.vectors import BlockSequence, LeKVector, make_vector
from src.services.canonize import oracle_from_function
from src.services.kvector import is_sos
from src.services.staircase import eval_member, eval_staircase

logger = logging.getLogger(__name__)

VectorLike = Union[PositiveVector, Sequence[float], np.ndarray]


def _entries(x: VectorLike) -> np.ndarray:
    if isinstance(x, PositiveVector):
        return x.as_array()
    return np.asarray(x, dtype=float)


def delta_for_k(k: int, tolerance: float = 1e-12) -> NetParams:
    """
    The delta in (0, 1] with delta * (1 + delta)^(k-1) = 1, by bisection.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k == 1:
        return NetParams(k=1, delta=1.0)
    low, high = 0.0, 1.0
    mid = 0.5
    for _ in range(200):
        mid = (low + high) / 2
        residual = mid * (1 + mid) ** (k - 1) - 1
        if abs(residual) < tolerance or high - low < 1e-16:
            break
        if residual > 0:
            high = mid
        else:
            low = mid
    logger.debug(f"delta_for_k({k}) = {mid!r}")
    return NetParams(k=k, delta=mid, tolerance=max(tolerance, 1e-12))


def params_from_delta(delta: float, tolerance: float = 1e-12) -> NetParams:
    """Least k with eps^(k-1) <= delta, up to tolerance."""
    if not 0.0 < delta <= 1.0:
        raise NetDomainError(f"delta must lie in (0, 1], got {delta}")
    eps = 1.0 / (1.0 + delta)
    k = 1
    while eps ** (k - 1) > delta + tolerance:
        k += 1
    return NetParams(k=k, delta=delta, tolerance=tolerance)


def level_intervals(p: NetParams) -> LevelIntervals:
    eps, k = p.eps, p.k
    inner = [eps ** (k - i) * (eps + 1) / 2 for i in range(1, k + 1)]
    return LevelIntervals(k=k, gammas=(0.0, *inner, 1.0))


def theta(p: NetParams, x: VectorLike, tolerance: float = 1e-9) -> LeKVector:
    """
    Map a grid vector to FIN_{<=k}: eps^i becomes k-i and 0 stays 0.

    Raises:
        GridError: If some entry is off the grid
    """
    values = _entries(x)
    grid = p.grid()
    coeffs = []
    for index, value in enumerate(values):
        hits = np.flatnonzero(np.abs(grid - value) <= tolerance)
        if hits.size == 0:
            raise GridError(f"entry {index} = {value} is not a grid value", index)
        coeffs.append(int(hits[0]))
    return make_vector(p.k, coeffs)


def theta_inv(p: NetParams, s: LeKVector, dim: Optional[int] = None) -> PositiveVector:
    if s.k != p.k:
        raise AmbientMismatchError(f"ambient levels differ: {s.k} != {p.k}")
    size = len(s.coeffs) if dim is None else dim
    if size < len(s.coeffs):
        raise NetDomainError(f"dimension {size} does not cover the support of {s.key()}")
    grid = p.grid()
    entries = np.zeros(size)
    entries[:len(s.coeffs)] = grid[list(s.coeffs)]
    return PositiveVector(entries=entries)


def round_gamma(p: NetParams, x: VectorLike, intervals: Optional[LevelIntervals] = None,
                tolerance: float = 1e-9) -> LeKVector:
    """
    Per-coordinate interval index of x.

    Raises:
        NetDomainError: If an entry lies outside [0, 1]
    """
    values = _entries(x)
    if values.size and (values.min() < -tolerance or values.max() > 1 + tolerance):
        raise NetDomainError("entries must lie in [0, 1]")
    intervals = intervals or level_intervals(p)
    return make_vector(p.k, [int(i) for i in intervals.index(np.clip(values, 0.0, 1.0))])


def snap_to_grid(p: NetParams, x: np.ndarray) -> np.ndarray:
    """Nearest grid value per entry."""
    grid = p.grid()
    nearest = np.abs(x[..., None] - grid).argmin(axis=-1)
    return grid[nearest]


def verify_net(p: NetParams, dim: int, samples: int, seed: int = 0, chunk: int = 1000,
               tolerance: float = 1e-9, progress: bool = False) -> NetReport:
    """
    Monte-Carlo check that the grid vectors form a delta-net of the
    norm-one positive vectors of dimension dim.

    Each chunk of samples draws from its own child of SeedSequence(seed),
    so the report depends on (seed, chunk) only.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if dim < 1:
        raise ValueError("dim must be at least 1")
    sizes = [min(chunk, samples - start) for start in range(0, samples, chunk)]
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    worst = 0.0
    for size, child in tqdm(list(zip(sizes, children)), desc="net", disable=not progress):
        rng = np.random.default_rng(child)
        x = rng.random((size, dim))
        x[np.arange(size), rng.integers(0, dim, size)] = 1.0
        distance = np.abs(x - snap_to_grid(p, x)).max()
        worst = max(worst, float(distance))
    intervals = level_intervals(p)
    report = NetReport(k=p.k, delta=p.delta, eps=p.eps, gammas=list(intervals.gammas), dim=dim,
                       samples=samples, seed=seed, max_distance=worst,
                       within_delta=worst <= p.delta + tolerance)
    logger.info(f"verify_net: max distance {worst:.6f} against delta {p.delta:.6f}")
    return report


def _checked_round(f: StaircaseValues, p: NetParams, x: VectorLike) -> LeKVector:
    if f.k != p.k:
        raise AmbientMismatchError(f"ambient levels differ: {f.k} != {p.k}")
    rounded = round_gamma(p, x)
    if rounded.level != p.k or not is_sos(rounded):
        raise DegenerateInputError(f"Gamma(x) = {rounded.key()} is not an sos")
    return rounded


def extend_f0(f: StaircaseValues, p: NetParams, x: VectorLike) -> LeKVector:
    """f composed with Gamma, defined on delta-sos vectors."""
    return eval_staircase(f, _checked_round(f, p, x))


def extend_f1(f: StaircaseValues, p: NetParams, x: VectorLike) -> PositiveVector:
    """x restricted to the support of f0(x)."""
    values = _entries(x)
    image = eval_staircase(f, _checked_round(f, p, x))
    kept = np.zeros_like(values)
    for n in image.support:
        kept[n] = values[n]
    return PositiveVector(entries=kept)


def member_f1(member: FamilyMember, p: NetParams, x: VectorLike) -> PositiveVector:
    """A single family member extended to x; no sos check."""
    values = _entries(x)
    image = eval_member(member, round_gamma(p, values))
    kept = np.zeros_like(values)
    for n in image.support:
        kept[n] = values[n]
    return PositiveVector(entries=kept)


def gamma_approximant(p: NetParams, i: int, x: VectorLike, l: int) -> PositiveVector:
    """
    The l-th approximant of the extension of min_i: keep x(n) at the first
    n with x(n) in the widened interval (gamma_i - 1/l, gamma_{i+1}).
    """
    if not 1 <= i <= p.k:
        raise ValueError(f"i must lie in 1..{p.k}")
    if l < 1:
        raise ValueError("l must be at least 1")
    values = _entries(x)
    low, high = level_intervals(p).interval(i)
    low -= 1.0 / l
    kept = np.zeros_like(values)
    for n, value in enumerate(values):
        if low < value and (value < high or (i == p.k and value <= high)):
            kept[n] = value
            break
    return PositiveVector(entries=kept)


def approximant_sequence(p: NetParams, i: int, x: VectorLike, length: int) -> List[PositiveVector]:
    return [gamma_approximant(p, i, x, l) for l in range(1, length + 1)]


def push_forward(p: NetParams, witness: BlockSequence) -> List[PositiveVector]:
    """Theta^{-1} of every witness term, in the common dimension of the witness."""
    if witness.k != p.k:
        raise AmbientMismatchError(f"ambient levels differ: {witness.k} != {p.k}")
    dim = witness.terms[-1].max_support + 1 if witness.terms else 0
    return [theta_inv(p, term, dim) for term in witness.terms]


def pull_back_oracle(p: NetParams, generators: BlockSequence,
                     relation: Callable[[PositiveVector], Hashable]) -> PartitionOracle:
    """
    The relation s ~ t iff relation(Theta^{-1} s) == relation(Theta^{-1} t)
    on <generators>.
    """
    if generators.k != p.k:
        raise AmbientMismatchError(f"ambient levels differ: {generators.k} != {p.k}")
    dim = generators.terms[-1].max_support + 1 if generators.terms else 0
    return oracle_from_function(generators, lambda s: relation(theta_inv(p, s, dim)))


def random_scale(p: NetParams, i: int, rng: np.random.Generator) -> float:
    """A factor from the middle of I_i, away from both cut points."""
    low, high = level_intervals(p).interval(i)
    width = high - low
    return float(rng.uniform(low + 0.1 * width, high - 0.1 * width))


def random_delta_sos(p: NetParams, basis: BlockSequence, rng: np.random.Generator) -> PositiveVector:
    """
    sum_n rho_n Theta^{-1}(b_n) over an sos block sequence, with rho_0 = 1
    and the other rho_n drawn from the middle of a random level interval.
    """
    if basis.k != p.k:
        raise AmbientMismatchError(f"ambient levels differ: {basis.k} != {p.k}")
    if not basis.terms:
        raise ValueError("basis must not be empty")
    dim = basis.terms[-1].max_support + 1
    total = theta_inv(p, basis.terms[0], dim).as_array()
    for term in basis.terms[1:]:
        rho = random_scale(p, int(rng.integers(0, p.k + 1)), rng)
        total += rho * theta_inv(p, term, dim).as_array()
    return PositiveVector(entries=total)
