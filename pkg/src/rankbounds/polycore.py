"""Exact sparse polynomials in block-partitioned variable sets.

A polynomial lives over a *signature*: a tuple of group sizes, e.g. (3, 3)
means two groups of three variables each.  Exponents are flat tuples over
all variables (group 1 first, then group 2, ...).  Coefficients are always
`fractions.Fraction`, so every operation in this package is exact.

  Terms     = Dict[Exponent, Fraction]
  Exponent  = Tuple[int, ...]   (one entry per variable, groups concatenated)

A polynomial carries a `dual` flag: dual polynomials act on primal ones as
constant-coefficient differential operators (see `diff_apply`).  The zero
polynomial has an empty term dict.

Variable naming for parsing and printing:

  * several groups:  x<i>_<j> is variable j of group i (1-based), e.g. x2_1;
    the letters x, y, z, w, u, v are accepted as aliases for groups 1..6
    (y3 == x2_3, y == x2_1);
  * a single group:  x<j>, e.g. x4;
  * dual variables replace the leading letter with d:  d2_1, or d4 for a
    single group.

Rational coefficients are written p/q; terms are joined with + and -, and
factors within a term with '*', e.g.  "3*x1_2^2*x2_1 - 1/2*x1_1^3".
"""

from __future__ import annotations

import hashlib
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

Exponent = Tuple[int, ...]
Multidegree = Tuple[int, ...]
Terms = Dict[Exponent, Fraction]

GROUP_LETTERS = "xyzwuv"


class InputError(ValueError):
    """Malformed user input (text, signature, degrees, files)."""


# ---------------------------------------------------------------------------
# signatures and multidegrees
# ---------------------------------------------------------------------------

def check_signature(sig: Sequence[int]) -> Tuple[int, ...]:
    sig = tuple(int(n) for n in sig)
    if not sig or any(n < 1 for n in sig):
        raise InputError(f"signature must be a nonempty tuple of positive ints, got {sig}")
    return sig


def nvars(sig: Sequence[int]) -> int:
    return sum(sig)


def group_offsets(sig: Sequence[int]) -> List[int]:
    """Starting flat index of each group."""
    offs = [0]
    for n in sig[:-1]:
        offs.append(offs[-1] + n)
    return offs


def group_slices(sig: Sequence[int]) -> List[Tuple[int, int]]:
    offs = group_offsets(sig)
    return [(o, o + n) for o, n in zip(offs, sig)]


def exp_multidegree(sig: Sequence[int], exp: Exponent) -> Multidegree:
    """Per-group degree vector of a single exponent tuple."""
    return tuple(sum(exp[a:b]) for a, b in group_slices(sig))


def md_add(a: Multidegree, b: Multidegree) -> Multidegree:
    return tuple(x + y for x, y in zip(a, b))


def md_sub(a: Multidegree, b: Multidegree) -> Multidegree:
    return tuple(x - y for x, y in zip(a, b))


def md_leq(a: Multidegree, b: Multidegree) -> bool:
    return all(x <= y for x, y in zip(a, b))


def md_rad(a: Multidegree) -> Multidegree:
    """Componentwise truncation to 0/1."""
    return tuple(min(1, x) for x in a)


def md_box(hi: Multidegree) -> Iterator[Multidegree]:
    """All multidegrees 0 <= a <= hi componentwise, lexicographically."""
    return itertools.product(*(range(h + 1) for h in hi))


def unit_md(s: int, i: int) -> Multidegree:
    """Multidegree e_i: 1 in group i (0-based), 0 elsewhere."""
    return tuple(1 if k == i else 0 for k in range(s))


# ---------------------------------------------------------------------------
# the polynomial type
# ---------------------------------------------------------------------------

def canonicalize(terms: Terms) -> Terms:
    return {e: c for e, c in terms.items() if c != 0}


@dataclass(frozen=True)
class MultiPoly:
    """Sparse polynomial over Q attached to a signature.

    `terms` maps flat exponent tuples to nonzero Fractions.  Instances are
    treated as immutable; all arithmetic returns new objects.
    """

    sig: Tuple[int, ...]
    terms: Terms = field(default_factory=dict)
    dual: bool = False

    def __post_init__(self):
        object.__setattr__(self, "sig", check_signature(self.sig))
        N = nvars(self.sig)
        clean = {}
        for e, c in self.terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != N or any(x < 0 for x in e):
                raise InputError(f"exponent {e} does not fit signature {self.sig}")
            c = Fraction(c)
            if c != 0:
                clean[e] = c
        object.__setattr__(self, "terms", clean)

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def multidegree(self) -> Optional[Multidegree]:
        """The common per-group degree vector, or None if mixed or zero."""
        mds = {exp_multidegree(self.sig, e) for e in self.terms}
        if len(mds) != 1:
            return None
        return mds.pop()

    def is_homogeneous(self) -> bool:
        return self.multidegree() is not None or self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.sig, self.dual, self.terms) == (other.sig, other.dual, other.terms)

    def __hash__(self):
        return hash((self.sig, self.dual, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------

    def _like(self, terms: Terms) -> "MultiPoly":
        return MultiPoly(self.sig, terms, self.dual)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return self._like(canonicalize(out))

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + other.scale(-1)

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        return self._like({e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        out: Terms = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, Fraction(0)) + ca * cb
        return self._like(canonicalize(out))

    def power(self, k: int) -> "MultiPoly":
        if k < 0:
            raise InputError("negative power")
        out = const(self.sig, 1, dual=self.dual)
        for _ in range(k):
            out = out * self
        return out

    def _check_compatible(self, other: "MultiPoly"):
        if self.sig != other.sig or self.dual != other.dual:
            raise InputError("incompatible polynomials (signature or dual flag differs)")

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, values: Sequence) -> Fraction:
        vals = [Fraction(v) for v in values]
        if len(vals) != nvars(self.sig):
            raise InputError("wrong number of coordinates")
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, v in zip(e, vals):
                if x:
                    t *= v ** x
            total += t
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable v by images[v]; images share one signature."""
        if len(images) != nvars(self.sig):
            raise InputError("need one image polynomial per variable")
        tgt = images[0]
        out = zero(tgt.sig, dual=tgt.dual)
        for e, c in self.terms.items():
            t = const(tgt.sig, c, dual=tgt.dual)
            for v, x in enumerate(e):
                if x:
                    t = t * images[v].power(x)
            out = out + t
        return out

    def __str__(self) -> str:
        return poly_to_str(self)

    def __repr__(self) -> str:
        return f"MultiPoly({self.sig}, {poly_to_str(self)!r}{', dual' if self.dual else ''})"

    def content_hash(self) -> str:
        payload = f"{self.sig}|{self.dual}|{poly_to_str(self)}"
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


def zero(sig, dual: bool = False) -> MultiPoly:
    return MultiPoly(tuple(sig), {}, dual)


def const(sig, c, dual: bool = False) -> MultiPoly:
    sig = check_signature(sig)
    return MultiPoly(sig, {(0,) * nvars(sig): Fraction(c)}, dual)


def variable(sig, flat_index: int, dual: bool = False) -> MultiPoly:
    sig = check_signature(sig)
    N = nvars(sig)
    if not 0 <= flat_index < N:
        raise InputError(f"variable index {flat_index} out of range for {sig}")
    e = [0] * N
    e[flat_index] = 1
    return MultiPoly(sig, {tuple(e): Fraction(1)}, dual)


def group_variable(sig, group: int, index: int, dual: bool = False) -> MultiPoly:
    """Variable `index` of group `group`, both 0-based."""
    sig = check_signature(sig)
    if not 0 <= group < len(sig) or not 0 <= index < sig[group]:
        raise InputError(f"no variable ({group},{index}) in signature {sig}")
    return variable(sig, group_offsets(sig)[group] + index, dual)


def monomial(sig, exp: Exponent, c=1, dual: bool = False) -> MultiPoly:
    return MultiPoly(tuple(sig), {tuple(exp): Fraction(c)}, dual)


# ---------------------------------------------------------------------------
# differentiation (apolarity action)
# ---------------------------------------------------------------------------

def falling(n: int, k: int) -> int:
    """n * (n-1) * ... * (n-k+1), exactly."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


def diff_apply(op: MultiPoly, target: MultiPoly) -> MultiPoly:
    """Apply a dual polynomial to a primal one as a differential operator.

    A dual monomial d^e acts as the iterated partial derivative of
    multi-order e; dual coefficients multiply through.  The result is primal.
    """
    if not op.dual or target.dual:
        raise InputError("diff_apply needs a dual operator and a primal target")
    if op.sig != target.sig:
        raise InputError("operator and target signatures differ")
    out: Terms = {}
    for ed, cd in op.terms.items():
        for ef, cf in target.terms.items():
            if any(d > f for d, f in zip(ed, ef)):
                continue
            coef = cd * cf
            for d, f in zip(ed, ef):
                if d:
                    coef *= falling(f, d)
            e = tuple(f - d for d, f in zip(ed, ef))
            out[e] = out.get(e, Fraction(0)) + coef
    return MultiPoly(target.sig, canonicalize(out), dual=False)


# ---------------------------------------------------------------------------
# monomial bases
# ---------------------------------------------------------------------------

def _compositions_desc(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All ways to write `total` as `parts` ordered nonnegative ints,
    in lexicographically descending order (first variable heaviest first)."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions_desc(total - head, parts - 1):
            yield (head,) + rest


def monomial_basis(sig, md: Multidegree, dual: bool = False) -> List[MultiPoly]:
    """All monomials of the given multidegree, in graded-lex order on the
    flattened variable list (within one multidegree this is lex descending)."""
    sig = check_signature(sig)
    if len(md) != len(sig) or any(a < 0 for a in md):
        raise InputError(f"multidegree {md} does not fit signature {sig}")
    per_group = [list(_compositions_desc(a, n)) for a, n in zip(md, sig)]
    out = []
    for combo in itertools.product(*per_group):
        exp = tuple(itertools.chain.from_iterable(combo))
        out.append(monomial(sig, exp, 1, dual=dual))
    return out


def basis_exponents(sig, md: Multidegree) -> List[Exponent]:
    sig = check_signature(sig)
    per_group = [list(_compositions_desc(a, n)) for a, n in zip(md, sig)]
    return [tuple(itertools.chain.from_iterable(c)) for c in itertools.product(*per_group)]


def basis_size(sig, md: Multidegree) -> int:
    from math import comb
    return _prod(comb(n + a - 1, a) for n, a in zip(sig, md))


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


# ---------------------------------------------------------------------------
# points and powers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductPoint:
    """One nonzero linear form per group; its d-th power is the product of
    the per-group forms raised to the per-group degrees."""

    sig: Tuple[int, ...]
    forms: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        sig = check_signature(self.sig)
        object.__setattr__(self, "sig", sig)
        if len(self.forms) != len(sig):
            raise InputError("need one linear form per group")
        clean = []
        for n, form in zip(sig, self.forms):
            form = tuple(Fraction(c) for c in form)
            if len(form) != n:
                raise InputError(f"form {form} has wrong length for group of size {n}")
            if all(c == 0 for c in form):
                raise InputError("each group form must be nonzero")
            clean.append(form)
        object.__setattr__(self, "forms", tuple(clean))

    def linear_form(self, group: int) -> MultiPoly:
        off = group_offsets(self.sig)[group]
        terms = {}
        for j, c in enumerate(self.forms[group]):
            if c != 0:
                e = [0] * nvars(self.sig)
                e[off + j] = 1
                terms[tuple(e)] = c
        return MultiPoly(self.sig, terms)

    def flat_coords(self) -> Tuple[Fraction, ...]:
        return tuple(itertools.chain.from_iterable(self.forms))


def power_of_point(pt: ProductPoint, md: Multidegree) -> MultiPoly:
    """prod_i (i-th linear form)^(md_i), exactly."""
    if len(md) != len(pt.sig):
        raise InputError("multidegree does not fit point signature")
    out = const(pt.sig, 1)
    for i, d in enumerate(md):
        out = out * pt.linear_form(i).power(d)
    return out


def random_poly(sig, md: Multidegree, rng, lo: int = -9, hi: int = 9,
                dual: bool = False) -> MultiPoly:
    """Random polynomial of exact multidegree md with integer coefficients."""
    terms = {}
    for e in basis_exponents(sig, md):
        c = rng.randint(lo, hi)
        if c:
            terms[e] = Fraction(c)
    if not terms:
        e = basis_exponents(sig, md)[0]
        terms[e] = Fraction(1)
    return MultiPoly(tuple(sig), terms, dual)


# ---------------------------------------------------------------------------
# parsing and printing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[a-zA-Z]\w*)"
                       r"|(?P<op>[-+*^()]))")


def _resolve_var(name: str, sig: Tuple[int, ...], expect_dual: bool,
                 pos: int) -> int:
    """Map a variable token to its flat index; raises on mismatch."""
    s = len(sig)
    is_dual = name.startswith("d") and (len(name) == 1 or not name[1].isalpha())
    if is_dual != expect_dual:
        kind = "dual" if expect_dual else "primal"
        raise InputError(f"variable '{name}' at position {pos} is not {kind}")
    body = name[1:] if is_dual else None

    if is_dual:
        m = re.fullmatch(r"(\d+)_(\d+)", body or "")
        if m and s > 1:
            i, j = int(m.group(1)), int(m.group(2))
            return _flat(sig, i, j, name, pos)
        m = re.fullmatch(r"(\d+)", body or "")
        if m and s == 1:
            return _flat(sig, 1, int(m.group(1)), name, pos)
        raise InputError(f"cannot read dual variable '{name}' at position {pos}")

    m = re.fullmatch(r"x(\d+)_(\d+)", name)
    if m and s > 1:
        return _flat(sig, int(m.group(1)), int(m.group(2)), name, pos)
    m = re.fullmatch(r"([a-zA-Z])(\d*)", name)
    if m:
        letter, idx = m.group(1), m.group(2)
        if s == 1:
            if letter != "x" or not idx:
                raise InputError(f"single-group variables are x1..x{sig[0]}, "
                                 f"got '{name}' at position {pos}")
            return _flat(sig, 1, int(idx), name, pos)
        gi = GROUP_LETTERS.find(letter)
        if gi < 0 or gi >= s:
            raise InputError(f"variable letter '{letter}' at position {pos} does not "
                             f"name a group of signature {sig}")
        return _flat(sig, gi + 1, int(idx) if idx else 1, name, pos)
    raise InputError(f"cannot read variable '{name}' at position {pos}")


def _flat(sig, i: int, j: int, name: str, pos: int) -> int:
    if not 1 <= i <= len(sig) or not 1 <= j <= sig[i - 1]:
        raise InputError(f"variable '{name}' at position {pos} is outside signature {sig}")
    return group_offsets(sig)[i - 1] + (j - 1)


def parse_poly(text: str, sig, dual: bool = False) -> MultiPoly:
    """Parse the textual polynomial grammar described in the module docstring."""
    sig = check_signature(sig)
    N = nvars(sig)
    tokens: List[Tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise InputError(f"unexpected character {text[pos:pos+1]!r} at position {pos}")
        for kind in ("num", "name", "op"):
            if m.group(kind) is not None:
                tokens.append((kind, m.group(kind), m.start(kind)))
                break
        pos = m.end()

    terms: Terms = {}
    i = 0
    n = len(tokens)
    if n == 0:
        raise InputError("empty polynomial")
    while i < n:
        sign = Fraction(1)
        while i < n and tokens[i][0] == "op" and tokens[i][1] in "+-":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        if i >= n:
            raise InputError("dangling sign at end of input")
        coeff = sign
        exp = [0] * N
        saw_factor = False
        expect_factor = True
        while i < n:
            kind, val, tpos = tokens[i]
            if kind == "op" and val in "+-":
                break
            if kind == "op" and val == "*":
                if expect_factor:
                    raise InputError(f"misplaced '*' at position {tpos}")
                expect_factor = True
                i += 1
                continue
            if not expect_factor:
                raise InputError(f"missing '*' before position {tpos}")
            if kind == "num":
                coeff *= Fraction(val)
                saw_factor = True
            elif kind == "name":
                v = _resolve_var(val, sig, dual, tpos)
                e = 1
                if i + 1 < n and tokens[i + 1][:2] == ("op", "^"):
                    if i + 2 >= n or tokens[i + 2][0] != "num" or "/" in tokens[i + 2][1]:
                        raise InputError(f"'^' at position {tokens[i+1][2]} needs an integer")
                    e = int(tokens[i + 2][1])
                    i += 2
                exp[v] += e
                saw_factor = True
            else:
                raise InputError(f"unexpected '{val}' at position {tpos}")
            expect_factor = False
            i += 1
        if not saw_factor:
            raise InputError("empty term")
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return MultiPoly(sig, canonicalize(terms), dual)


def var_name(sig, flat_index: int, dual: bool = False) -> str:
    sig = check_signature(sig)
    offs = group_offsets(sig)
    for g in range(len(sig) - 1, -1, -1):
        if flat_index >= offs[g]:
            j = flat_index - offs[g] + 1
            if len(sig) == 1:
                return f"{'d' if dual else 'x'}{j}"
            return f"{'d' if dual else 'x'}{g + 1}_{j}"
    raise InputError("bad variable index")


def _coeff_str(c: Fraction) -> str:
    return str(c)


def poly_to_str(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    keys = sorted(p.terms, key=lambda e: (sum(e), e), reverse=True)
    pieces = []
    for k, e in enumerate(keys):
        c = p.terms[e]
        factors = []
        for v, x in enumerate(e):
            if x == 1:
                factors.append(var_name(p.sig, v, p.dual))
            elif x > 1:
                factors.append(f"{var_name(p.sig, v, p.dual)}^{x}")
        mag = abs(c)
        if not factors:
            body = _coeff_str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _coeff_str(mag) + "*" + "*".join(factors)
        if k == 0:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append((" + " if c > 0 else " - ") + body)
    return "".join(pieces)
