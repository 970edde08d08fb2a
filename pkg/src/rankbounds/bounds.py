"""Certified lower bounds, verified upper bounds, and the report.

Lower bounds come in three families:

  * catalecticant ranks (any contraction matrix rank bounds the additive
    rank from below);
  * singularity-improved bounds: catalecticant rank plus the dimension of
    the locus where the polynomial is unusually singular, in a one-group
    version, a many-group version, and two versions for linear series;
  * length bounds: the length of the apolar algebra divided by generator
    degree data, with a tightened denominator variant and a product-of-
    coordinates variant for several groups, plus the k-ary-split variant.

Upper bounds are attached only when the input matches a family with an
explicit exact decomposition in `formulas`; those are verified before
being reported.  The report enforces the sanity invariant that no
certified lower bound exceeds any verified upper bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import formulas
from .apolar import (apolar_length, apolar_piece, hilbert_function,
                     min_generator_degrees, min_generators)
from .cata import (catalecticant_rank, conciseness_check, injectivity_check,
                   profile, series_to_biform)
from .errors import InvariantViolation
from .exactla import RankContext
from .gb import (DEFAULT_PAIR_BUDGET, affine_dim, contraction_image_polys,
                 sigma_dim_multi, sigma_hat_dim, zero_dim_check)
from .polycore import (InputError, Multidegree, MultiPoly, group_slices,
                       md_box, md_rad, md_sub, nvars, unit_md)


@dataclass
class RunConfig:
    """Knobs shared by the report assembly and the CLI."""

    strategy: str = "auto"
    seed: int = 0
    max_cells: int = 10000
    gb_budget: int = DEFAULT_PAIR_BUDGET
    fmt: str = "text"
    dump_matrices: bool = False

    def context(self) -> RankContext:
        return RankContext(self.strategy, self.seed)


@dataclass
class BoundEntry:
    name: str
    applicable: bool
    value: Optional[int] = None
    detail: str = ""
    # which rank notion the value bounds from below: "grouped" entries
    # bound the rank by products of per-group powers, "total" entries
    # bound the ordinary power rank of the flattened form
    grading: str = "grouped"

    def as_dict(self) -> dict:
        return {"name": self.name, "applicable": self.applicable,
                "value": self.value, "detail": self.detail,
                "grading": self.grading}


@dataclass
class UpperEntry:
    name: str
    value: int
    verified: bool
    parts: Optional[int] = None

    def as_dict(self) -> dict:
        return {"name": self.name, "value": self.value,
                "verified": self.verified, "parts": self.parts}


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# ---------------------------------------------------------------------------
# individual lower bounds
# ---------------------------------------------------------------------------

def bound_catalecticant(M: MultiPoly, ctx: RankContext,
                        max_cells: int = 10 ** 18) -> BoundEntry:
    prof = profile(M, ctx, max_cells)
    best_a, best = max(prof.items(), key=lambda kv: (kv[1], kv[0]))
    return BoundEntry("catalecticant", True, best,
                      f"best contraction degree {list(best_a)}")


def bound_improved(F: MultiPoly, ctx: RankContext, a: Optional[int] = None,
                   budget: int = DEFAULT_PAIR_BUDGET) -> BoundEntry:
    """Single-group improvement: catalecticant rank in degree d-a plus the
    dimension of the cone of points of singularity order above a.
    Needs a concise polynomial."""
    name = "improved"
    if len(F.sig) != 1:
        return BoundEntry(name, False, detail="single-group inputs only")
    if not conciseness_check(F, ctx):
        return BoundEntry(name, False, detail="not concise")
    d = F.total_degree()
    sweep = range(d) if a is None else [a]
    best = None
    best_a = None
    for aa in sweep:
        val = (catalecticant_rank(F, (d - aa,), ctx)
               + sigma_hat_dim(F, aa, budget))
        if best is None or val > best:
            best, best_a = val, aa
    return BoundEntry(name, True, best, f"best singularity order {best_a}")


def bound_improved_multi(M: MultiPoly, ctx: RankContext,
                         seed: int = 0,
                         a: Optional[Multidegree] = None,
                         budget: int = DEFAULT_PAIR_BUDGET) -> BoundEntry:
    """Many-group improvement: rank of the complementary contraction plus
    the multiprojective singular-locus dimension plus one.  Each degree is
    usable only when the squarefree truncation of the complementary
    contraction is injective.  Only degrees with every coordinate of d-a
    positive are sound: the underlying argument identifies the singular
    locus with its image under the degree-(d-a) power embedding, and that
    map collapses any coordinate where d_i - a_i is zero."""
    name = "improved-multi"
    d = M.multidegree()
    if a is None:
        sweep = [x for x in md_box(d)
                 if all(x[i] < d[i] for i in range(len(d)))]
    else:
        if any(a[i] >= d[i] for i in range(len(d))):
            return BoundEntry(name, False,
                              detail="needs every coordinate of d-a positive")
        sweep = [a]
    best = None
    best_a = None
    for aa in sweep:
        if not injectivity_check(M, md_sub(d, aa), ctx):
            continue
        val = (catalecticant_rank(M, md_sub(d, aa), ctx)
               + sigma_dim_multi(M, aa, seed, budget) + 1)
        if best is None or val > best:
            best, best_a = val, aa
    if best is None:
        return BoundEntry(name, False,
                          detail="no usable degree: injectivity fails everywhere")
    return BoundEntry(name, True, best, f"best degree {list(best_a)}")


def _series_shape(M: MultiPoly) -> Tuple[int, Tuple[int, ...], Tuple[int, ...]]:
    """Split a series-type polynomial (linear in its first group) into
    (series size, value signature, value multidegree)."""
    d = M.multidegree()
    if d is None or len(M.sig) != 2 or d[0] != 1:
        raise InputError("series bounds need a two-group polynomial linear "
                         "in its first group")
    return M.sig[0], M.sig[1:], d[1:]


def _restrict_to_value_groups(polys: Sequence[MultiPoly], m: int
                              ) -> List[MultiPoly]:
    out = []
    for p in polys:
        terms = {}
        for e, c in p.terms.items():
            if any(e[:m]):
                raise InvariantViolation("expected forms without series variables")
            terms[e[m:]] = c
        out.append(MultiPoly(p.sig[1:], terms))
    return out


def bound_series_v1(M: MultiPoly, ctx: RankContext,
                    budget: int = DEFAULT_PAIR_BUDGET) -> BoundEntry:
    """Series improvement, first form: value-only catalecticant rank plus
    the dimension of the cone of common high-order singular points.
    Needs a concise series."""
    name = "series-v1"
    try:
        m, vsig, vd = _series_shape(M)
    except InputError as exc:
        return BoundEntry(name, False, detail=str(exc))
    if not conciseness_check(M, ctx):
        return BoundEntry(name, False, detail="not concise")
    zero_md = (0,) * len(vsig)
    best = None
    best_a = None
    for aa in md_box(vd):
        if aa == vd:
            continue
        rank = catalecticant_rank(M, (0,) + md_sub(vd, aa), ctx)
        gens = _restrict_to_value_groups(
            contraction_image_polys(M, (1,) + aa), m)
        cone = affine_dim(gens, budget)
        if cone < 0:
            raise InvariantViolation("cone of a homogeneous ideal cannot be empty")
        val = rank + cone
        if best is None or val > best:
            best, best_a = val, aa
    return BoundEntry(name, True, best, f"best singularity order {list(best_a)}")


def bound_series_v2(M: MultiPoly, ctx: RankContext, seed: int = 0,
                    budget: int = DEFAULT_PAIR_BUDGET) -> BoundEntry:
    """Series improvement, second form: mixed catalecticant rank plus the
    dimension of the incidence locus of (member, high-order point) pairs,
    plus one.  Needs the order-(d-1) value contraction to be surjective,
    and a single value group."""
    name = "series-v2"
    try:
        m, vsig, vd = _series_shape(M)
    except InputError as exc:
        return BoundEntry(name, False, detail=str(exc))
    if len(vsig) != 1:
        return BoundEntry(name, False, detail="one value group only")
    n = vsig[0]
    d = vd[0]
    if catalecticant_rank(M, (0, d - 1), ctx) != m * n:
        return BoundEntry(name, False,
                          detail="order d-1 contraction is not surjective")
    best = None
    best_a = None
    for aa in range(d):
        val = (catalecticant_rank(M, (1, d - aa), ctx)
               + sigma_dim_multi(M, (0, aa), seed, budget) + 1)
        if best is None or val > best:
            best, best_a = val, aa
    return BoundEntry(name, True, best, f"best singularity order {best_a}")


def bound_length(M: MultiPoly, ctx: RankContext) -> BoundEntry:
    """Apolar length over the largest total degree of a minimal generator."""
    length = apolar_length(M, ctx)
    gens = min_generator_degrees(M)
    delta = max(sum(b) for b in gens)
    return BoundEntry("length", True, _ceil_div(length, delta),
                      f"length {length} over generator degree {delta}")


def bound_length_tight(M: MultiPoly, ctx: RankContext,
                       budget: int = DEFAULT_PAIR_BUDGET) -> BoundEntry:
    """Apolar length over the smallest degree cutoff whose generators
    already cut out a finite cone."""
    length = apolar_length(M, ctx)
    gens = sorted(min_generators(M), key=lambda g: g.total_degree())
    degrees = [g.total_degree() for g in gens]
    for eps in sorted(set(degrees)):
        prefix = [g for g in gens if g.total_degree() <= eps]
        if zero_dim_check(prefix, budget):
            return BoundEntry("length-tight", True, _ceil_div(length, eps),
                              f"length {length} over degree cutoff {eps}")
    raise InvariantViolation("the full annihilator must cut out a finite cone")


def bound_length_multi(M: MultiPoly, ctx: RankContext) -> BoundEntry:
    """Apolar length over the product of per-group maxima of generator
    multidegrees."""
    length = apolar_length(M, ctx)
    gens = min_generator_degrees(M)
    deltas = [max(b[i] for b in gens) for i in range(len(M.sig))]
    denom = 1
    for x in deltas:
        denom *= max(x, 1)
    return BoundEntry("length-multi", True, _ceil_div(length, denom),
                      f"length {length} over degree box {deltas}")


def bound_split_kary(F: MultiPoly, ctx: RankContext, k: int,
                     budget: int = DEFAULT_PAIR_BUDGET) -> BoundEntry:
    """Lower bound for writing F as a sum of products of k forms: apolar
    length over the k largest generator degrees in a minimal finite-cone
    prefix of the generators (sorted by ascending degree)."""
    name = f"split-{k}ary"
    if len(F.sig) != 1:
        return BoundEntry(name, False, detail="single-group inputs only")
    length = apolar_length(F, ctx)
    gens = sorted(min_generators(F), key=lambda g: g.total_degree())
    prefix: List[MultiPoly] = []
    for g in gens:
        prefix.append(g)
        if len(prefix) >= k and zero_dim_check(prefix, budget):
            top = sorted((p.total_degree() for p in prefix), reverse=True)[:k]
            denom = 1
            for x in top:
                denom *= x
            return BoundEntry(name, True, _ceil_div(length, denom),
                              f"length {length} over top degrees {top}")
    return BoundEntry(name, False,
                      detail=f"no finite-cone prefix with at least {k} generators")


def monomial_kary_bracket(degs: Sequence[int], k: int) -> Tuple[int, int]:
    """Conjectured bracket for the k-ary split rank of a monomial with the
    given sorted exponents: the products of the low (d_i + 1) skipping the
    top k, in the two adjacent windows."""
    d = sorted(degs)
    n = len(d)
    if not 1 <= k <= n:
        raise InputError("k must be between 1 and the number of variables")
    lo = 1
    for x in d[:n - k]:
        lo *= x + 1
    hi = 1
    for x in d[1:n - k + 1]:
        hi *= x + 1
    return lo, hi


# ---------------------------------------------------------------------------
# verified upper bounds for recognized families
# ---------------------------------------------------------------------------

def _monomial_pattern(M: MultiPoly) -> Optional[Tuple[Tuple[int, ...], Fraction]]:
    """If M is c * prod_i (product of all group-i variables)^(d_i) with
    every group constant-exponent, return (exponent per group, c)."""
    if len(M.terms) != 1 or M.dual:
        return None
    (exp, c), = M.terms.items()
    degs = []
    for lo, hi in group_slices(M.sig):
        block = set(exp[lo:hi])
        if len(block) != 1 or 0 in block:
            return None
        degs.append(exp[lo])
    return tuple(degs), c


def known_uppers(M: MultiPoly, ctx: RankContext) -> List[UpperEntry]:
    from . import fixtures
    out: List[UpperEntry] = []
    d = M.multidegree()
    single = len(M.sig) == 1

    pat = _monomial_pattern(M)
    if pat is not None:
        degs, c = pat
        if all(n == 1 or x == 1 for n, x in zip(M.sig, degs)):
            target, dec = formulas.grouped_product(M.sig, degs)
            scaled = formulas.Decomposition(
                dec.sig, dec.degree,
                tuple((c * coef, pt) for coef, pt in dec.parts))
            residual = formulas.verify_decomposition(M, scaled)
            if residual.is_zero():
                out.append(UpperEntry("product-powers", len(scaled), True,
                                      len(scaled)))
        return out

    N = nvars(M.sig)
    for n in (3, 4):
        if N != n * n:
            continue
        if M == fixtures.determinant(n, grouped=not single):
            if n == 3:
                target, dec = formulas.derksen_det3()
                if single:
                    target, dec = formulas.split_to_waring(target, dec)
                out.append(UpperEntry("determinant-split", len(dec), True,
                                      len(dec)))
            else:
                count = (formulas.derksen_waring_count(n) if single
                         else formulas.derksen_split_count(n))
                out.append(UpperEntry("determinant-split", count, False, count))
        if M == fixtures.permanent(n, grouped=not single):
            target, dec = formulas.glynn_permanent(n)
            if single:
                target, dec = formulas.split_to_waring(target, dec)
            out.append(UpperEntry("permanent-signs", len(dec), True, len(dec)))
            if not single:
                target2, dec2 = formulas.ryser_permanent(n)
                out.append(UpperEntry("permanent-subsets", len(dec2), True,
                                      len(dec2)))
    return out


# ---------------------------------------------------------------------------
# the assembled report
# ---------------------------------------------------------------------------

def report(M: MultiPoly, cfg: Optional[RunConfig] = None) -> dict:
    cfg = cfg or RunConfig()
    ctx = cfg.context()
    d = M.multidegree()
    if d is None:
        raise InputError("reports need a homogeneous nonzero polynomial")

    prof = profile(M, ctx, cfg.max_cells)
    length = sum(prof.values())
    gens = min_generator_degrees(M)

    single = len(M.sig) == 1
    entries: List[BoundEntry] = []
    best_a, best_rank = max(prof.items(), key=lambda kv: (kv[1], kv[0]))
    entries.append(BoundEntry("catalecticant", True, best_rank,
                              f"best contraction degree {list(best_a)}"))
    if single:
        entries.append(bound_improved(M, ctx, budget=cfg.gb_budget))
        entries.append(BoundEntry("improved-multi", False,
                                  detail="several-group inputs only"))
    else:
        entries.append(BoundEntry("improved", False,
                                  detail="single-group inputs only"))
        entries.append(bound_improved_multi(M, ctx, cfg.seed,
                                            budget=cfg.gb_budget))
    entries.append(bound_series_v1(M, ctx, cfg.gb_budget))
    entries.append(bound_series_v2(M, ctx, cfg.seed, cfg.gb_budget))

    # the two length bounds over total degree bound the ordinary power
    # rank of the flattened form; for several-group inputs that is a
    # different (larger) quantity than the per-group rank, so they are
    # reported under the "total" grading and kept out of the grouped best
    delta = max(sum(b) for b in gens)
    entries.append(BoundEntry("length", True, _ceil_div(length, delta),
                              f"length {length} over generator degree {delta}",
                              grading="total"))
    tight = bound_length_tight(M, ctx, cfg.gb_budget)
    tight.grading = "total"
    entries.append(tight)
    deltas = [max(b[i] for b in gens) for i in range(len(M.sig))]
    denom = 1
    for x in deltas:
        denom *= max(x, 1)
    entries.append(BoundEntry("length-multi", True, _ceil_div(length, denom),
                              f"length {length} over degree box {deltas}"))

    if single:
        # one group: the two gradings coincide
        for e in entries:
            e.grading = "total"

    uppers = known_uppers(M, ctx)

    track = "total" if single else "grouped"
    best_lower = max(e.value for e in entries
                     if e.applicable and e.value is not None
                     and e.grading == track)
    verified = [u.value for u in uppers if u.verified]
    best_upper = min(verified) if verified else None
    for u in uppers:
        if u.verified and best_lower > u.value:
            raise InvariantViolation(
                f"lower bound {best_lower} exceeds verified upper {u.value} "
                f"({u.name})")
    if best_upper is None:
        status = f"r ≥ {best_lower}"
    elif best_upper == best_lower:
        status = f"rank determined = {best_lower}"
    else:
        status = f"{best_lower} ≤ r ≤ {best_upper}"

    return {
        "input": {
            "signature": list(M.sig),
            "multidegree": list(d),
            "hash": M.content_hash(),
        },
        "profile": [{"degree": list(a), "rank": prof[a]} for a in sorted(prof)],
        "apolar": {
            "hilbert": [{"degree": list(a), "value": prof[a]}
                        for a in sorted(prof)],
            "length": length,
            "generators": [{"degree": list(b), "count": gens[b]}
                           for b in sorted(gens)],
        },
        "bounds": [e.as_dict() for e in entries],
        "uppers": [u.as_dict() for u in uppers],
        "best": {"lower": best_lower, "upper": best_upper, "status": status},
        "meta": {
            "seed": cfg.seed,
            "strategy": cfg.strategy,
            "prime": ctx.prime,
            "versions": _versions(),
        },
    }


def _versions() -> Dict[str, str]:
    import platform

    import numpy

    from . import __version__
    return {
        "package": __version__,
        "python": platform.python_version(),
        "numpy": numpy.__version__,
    }
