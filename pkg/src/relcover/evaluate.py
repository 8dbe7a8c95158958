"""Exact and sampled system reliability.

Three routes to P(every function has a working implementation):

* classical: inclusion-exclusion over all non-empty subsets of the product
  space W of one-per-function selections, 2^|W| - 1 signed terms.  Kept as
  the intentionally expensive baseline and cross-check.
* simplified: one signed term per covering selection, sign (-1)^(k - n) for
  cardinality k, prod (2^{t_i} - 1) terms in total.
* monte_carlo: per-component Bernoulli sampling.

Both exact routes share the same term algebra: each term is a coefficient
times the product of component reliabilities over a union mask.  Products
are memoised per union mask and terms are added in a fixed canonical order
with compensated summation, so results are bit-for-bit reproducible.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

import numpy as np

from . import combinatorics as comb_mod
from .errors import CapExceeded, EvaluationTimeout, InvalidSystemError
from .system import SystemSpec, validate_system

# Exact evaluators refuse term counts beyond this unless overridden.
DEFAULT_TERM_CAP = (1 << 24) - 1

_MC_CHUNK = 1 << 17


class Method(str, Enum):
    CLASSICAL = "classical"
    SIMPLIFIED = "simplified"
    MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class TermEvent:
    """One signed term: coefficient times the product over component_mask."""

    component_mask: int
    coefficient: int


@dataclass(frozen=True)
class EvaluationReport:
    method: Method
    reliability: float
    term_count: int
    distinct_product_count: int
    wall_time: float
    standard_error: float | None = None
    samples: int | None = None

    @property
    def display_reliability(self) -> float:
        """Clamped to [0, 1] for printing; the stored value keeps the raw sum."""
        return min(1.0, max(0.0, self.reliability))


class _CompensatedSum:
    """Neumaier variant of Kahan summation; order still matters, so callers
    feed terms in canonical order."""

    __slots__ = ("total", "correction")

    def __init__(self) -> None:
        self.total = 0.0
        self.correction = 0.0

    def add(self, x: float) -> None:
        t = self.total + x
        if abs(self.total) >= abs(x):
            self.correction += (self.total - t) + x
        else:
            self.correction += (x - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.correction


def _prepare(spec: SystemSpec) -> tuple[list[list[int]], list[float]]:
    report = validate_system(spec)
    if not report.ok:
        raise InvalidSystemError(report.violations)
    reliabilities = [0.0] * spec.component_count
    for c in spec.components:
        reliabilities[c.id] = c.reliability
    masks = [[impl.mask for impl in function] for function in spec.functions]
    return masks, reliabilities


def _mask_product(mask: int, reliabilities: list[float], cache: dict[int, float]) -> float:
    hit = cache.get(mask)
    if hit is not None:
        return hit
    p = 1.0
    m = mask
    while m:
        low = m & -m
        p *= reliabilities[low.bit_length() - 1]
        m ^= low
    cache[mask] = p
    return p


def _check_term_cap(term_count: int, cap_terms: int | None) -> None:
    if cap_terms is not None and term_count > cap_terms:
        raise CapExceeded(f"{term_count} terms exceeds the cap {cap_terms}")


def reliability_simplified(
    spec: SystemSpec, cap_terms: int | None = DEFAULT_TERM_CAP
) -> EvaluationReport:
    """Exact reliability via covering selections.

    Sums (-1)^(k - n) * P(all selected implementations work) over covering
    selections of every cardinality k = n..m, in the canonical enumeration
    order of `enumerate_covering_selections`.
    """
    start = time.perf_counter()
    masks, reliabilities = _prepare(spec)
    shape = spec.shape
    term_count = comb_mod.count_terms_simplified(shape)
    _check_term_cap(term_count, cap_terms)

    # Fold the functions together: after function i the list holds one
    # (cardinality, union mask) entry per choice of a non-empty subset from
    # each of the first i functions, in the canonical odometer order of
    # `_covering_index_tuples`.  Memory is linear in the term count.
    flat: list[tuple[int, int]] = [(0, 0)]
    for function_masks in masks:
        t = len(function_masks)
        subs: list[tuple[int, int]] = []
        for size in range(1, t + 1):
            for chosen in itertools.combinations(range(t), size):
                m = 0
                for j in chosen:
                    m |= function_masks[j]
                subs.append((size, m))
        flat = [(k + size, union | m) for (k, union) in flat for (size, m) in subs]

    n, m_total = shape.n, shape.m
    buckets: list[list[int]] = [[] for _ in range(m_total + 1)]
    for k, union in flat:
        buckets[k].append(union)

    acc = _CompensatedSum()
    cache: dict[int, float] = {}
    for k in range(n, m_total + 1):
        sign = 1.0 if (k - n) % 2 == 0 else -1.0
        for union in buckets[k]:
            acc.add(sign * _mask_product(union, reliabilities, cache))

    return EvaluationReport(
        method=Method.SIMPLIFIED,
        reliability=acc.value,
        term_count=term_count,
        distinct_product_count=len(cache),
        wall_time=time.perf_counter() - start,
    )


def _point_masks(masks: list[list[int]], shape) -> list[int]:
    out = []
    for point in itertools.product(*(range(t) for t in shape.sizes)):
        m = 0
        for i, j in enumerate(point):
            m |= masks[i][j]
        out.append(m)
    return out


def reliability_classical(
    spec: SystemSpec,
    cap_terms: int | None = DEFAULT_TERM_CAP,
    budget_seconds: float | None = None,
) -> EvaluationReport:
    """Exact reliability via inclusion-exclusion over subsets of W.

    Enumerates subsets as an ascending binary counter over |W| bits; union
    masks come from two prefix tables (low/high halves of the counter) so a
    subset costs O(1) beyond the popcount for its sign.  `budget_seconds`
    aborts long runs with EvaluationTimeout; the benchmark treats that as a
    data point rather than a failure.
    """
    start = time.perf_counter()
    masks, reliabilities = _prepare(spec)
    shape = spec.shape
    w_size = shape.product_size
    term_count = comb_mod.count_terms_classical(shape)
    _check_term_cap(term_count, cap_terms)

    points = _point_masks(masks, shape)
    total_subsets = (1 << w_size) - 1

    # Prefix tables only pay off when they fit; past that the run exists to
    # demonstrate the blow-up and will hit the budget long before the end.
    use_tables = w_size <= 40
    if use_tables:
        lo_bits = min(w_size, 16)
        lo_table = [0] * (1 << lo_bits)
        for s in range(1, 1 << lo_bits):
            low = s & -s
            lo_table[s] = lo_table[s ^ low] | points[low.bit_length() - 1]
        hi_table = [0] * (1 << (w_size - lo_bits))
        for s in range(1, 1 << (w_size - lo_bits)):
            low = s & -s
            hi_table[s] = hi_table[s ^ low] | points[lo_bits + low.bit_length() - 1]
        lo_mask = (1 << lo_bits) - 1

    acc = _CompensatedSum()
    cache: dict[int, float] = {}
    for s in range(1, total_subsets + 1):
        if budget_seconds is not None and (s & 8191) == 0:
            elapsed = time.perf_counter() - start
            if elapsed > budget_seconds:
                raise EvaluationTimeout(
                    f"classical evaluation aborted after {elapsed:.1f}s, "
                    f"{s} of {total_subsets} subsets done"
                )
        if use_tables:
            union = lo_table[s & lo_mask] | hi_table[s >> lo_bits]
        else:
            union = 0
            rest = s
            while rest:
                low = rest & -rest
                union |= points[low.bit_length() - 1]
                rest ^= low
        sign = 1.0 if (s.bit_count() & 1) else -1.0
        acc.add(sign * _mask_product(union, reliabilities, cache))

    return EvaluationReport(
        method=Method.CLASSICAL,
        reliability=acc.value,
        term_count=term_count,
        distinct_product_count=len(cache),
        wall_time=time.perf_counter() - start,
    )


def reliability_monte_carlo(
    spec: SystemSpec, samples: int, seed: int
) -> EvaluationReport:
    """Estimate reliability by sampling component states.

    Each sample draws every component up/down independently; the system
    counts as up when every function has an implementation with all its
    components up.  Returns the hit rate and its binomial standard error.
    Deterministic for a fixed seed.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    start = time.perf_counter()
    _, reliabilities = _prepare(spec)
    rel = np.asarray(reliabilities)
    functions = [
        [np.fromiter(sorted(impl.components), dtype=np.int64) for impl in function]
        for function in spec.functions
    ]

    rng = np.random.default_rng(seed)
    hits = 0
    remaining = samples
    while remaining > 0:
        chunk = min(remaining, _MC_CHUNK)
        up = rng.random((chunk, rel.size)) < rel
        ok = np.ones(chunk, dtype=bool)
        for function in functions:
            function_up = np.zeros(chunk, dtype=bool)
            for comp_ids in function:
                function_up |= up[:, comp_ids].all(axis=1)
            ok &= function_up
        hits += int(ok.sum())
        remaining -= chunk

    mean = hits / samples
    stderr = (mean * (1.0 - mean) / samples) ** 0.5
    return EvaluationReport(
        method=Method.MONTE_CARLO,
        reliability=mean,
        term_count=samples,
        distinct_product_count=0,
        wall_time=time.perf_counter() - start,
        standard_error=stderr,
        samples=samples,
    )


def term_stream(
    spec: SystemSpec,
    method: Method | str = Method.SIMPLIFIED,
    cap_terms: int | None = DEFAULT_TERM_CAP,
) -> Iterator[TermEvent]:
    """Signed terms of an exact method, in its canonical evaluation order.

    Aggregating coefficients by component_mask and summing
    coefficient * prod(a_c) reproduces the method's reliability; the two
    exact methods aggregate to identical coefficient maps.
    """
    method = Method(method)
    masks, _ = _prepare(spec)
    shape = spec.shape

    if method is Method.SIMPLIFIED:
        _check_term_cap(comb_mod.count_terms_simplified(shape), cap_terms)

        def simplified() -> Iterator[TermEvent]:
            n, m = shape.n, shape.m
            for k in range(n, m + 1):
                coeff = 1 if (k - n) % 2 == 0 else -1
                for per_function in comb_mod._covering_index_tuples(shape, k):
                    union = 0
                    for i, chosen in enumerate(per_function):
                        for j in chosen:
                            union |= masks[i][j]
                    yield TermEvent(union, coeff)

        return simplified()

    if method is Method.CLASSICAL:
        _check_term_cap(comb_mod.count_terms_classical(shape), cap_terms)

        def classical() -> Iterator[TermEvent]:
            points = _point_masks(masks, shape)
            for s in range(1, (1 << shape.product_size)):
                union = 0
                rest = s
                while rest:
                    low = rest & -rest
                    union |= points[low.bit_length() - 1]
                    rest ^= low
                yield TermEvent(union, 1 if (s.bit_count() & 1) else -1)

        return classical()

    raise ValueError("term streams exist only for the exact methods")


def aggregate_terms(events: Iterable[TermEvent]) -> dict[int, int]:
    """Net coefficient per component mask; zero entries are dropped."""
    out: dict[int, int] = {}
    for event in events:
        out[event.component_mask] = out.get(event.component_mask, 0) + event.coefficient
    return {mask: coeff for mask, coeff in out.items() if coeff}
