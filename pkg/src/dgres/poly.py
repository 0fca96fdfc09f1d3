"""Exact multivariate monomial/polynomial arithmetic over the rationals.

Everything here is exact: coefficients are `fractions.Fraction`, exponents are
ints.  Floats are rejected.  Monomials live over an ordered `VariableSet`; a
variable set can mark some variables inactive, which is how we model the
smaller polynomial ring Q/<Z> that pruning produces (the exponent tuples keep
their length, but inactive variables must never occur).

Text format for monomials: ``x1^2*x3`` (``1`` for the unit monomial).
Ideals serialize as a JSON object with an ordered variable list and a list of
generator strings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations, product as iproduct
from typing import Iterable, Iterator, Sequence


class PolyError(ValueError):
    pass


_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class VariableSet:
    """An ordered tuple of variable names, with an activity mask.

    Inactive variables model a quotient ring Q/<Z>: they keep their slot in
    exponent vectors but monomials over the set must not use them.
    """

    names: tuple[str, ...]
    active: tuple[bool, ...] = ()

    def __post_init__(self):
        if not self.active:
            object.__setattr__(self, "active", tuple(True for _ in self.names))
        if len(self.active) != len(self.names):
            raise PolyError("activity mask length mismatch")
        seen = set()
        for nm in self.names:
            if not _NAME_RE.match(nm):
                raise PolyError(f"bad variable name: {nm!r}")
            if nm in seen:
                raise PolyError(f"duplicate variable name: {nm!r}")
            seen.add(nm)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PolyError(f"unknown variable: {name!r}") from None

    def active_names(self) -> tuple[str, ...]:
        return tuple(n for n, a in zip(self.names, self.active) if a)

    def deactivate(self, names: Iterable[str]) -> "VariableSet":
        kill = set(names)
        unknown = kill - set(self.names)
        if unknown:
            raise PolyError(f"unknown variables: {sorted(unknown)}")
        return VariableSet(
            self.names,
            tuple(a and (n not in kill) for n, a in zip(self.names, self.active)),
        )

    def variable(self, name: str) -> "Monomial":
        i = self.index(name)
        if not self.active[i]:
            raise PolyError(f"variable {name!r} is inactive in this ring")
        exps = [0] * len(self.names)
        exps[i] = 1
        return Monomial(self, tuple(exps))

    def one(self) -> "Monomial":
        return Monomial(self, tuple(0 for _ in self.names))

    def to_json(self) -> dict:
        d: dict = {"names": list(self.names)}
        if not all(self.active):
            d["active"] = list(self.active)
        return d

    @staticmethod
    def from_json(d: dict) -> "VariableSet":
        names = tuple(d["names"])
        active = tuple(d.get("active", [True] * len(names)))
        return VariableSet(names, active)


@dataclass(frozen=True)
class Monomial:
    """A monomial x^a over a fixed VariableSet (exponents >= 0)."""

    ring: VariableSet
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.ring):
            raise PolyError("exponent tuple has wrong length")
        for e, a in zip(self.exponents, self.ring.active):
            if not isinstance(e, int) or e < 0:
                raise PolyError(f"bad exponent {e!r}")
            if e and not a:
                raise PolyError("monomial uses an inactive variable")

    def __mul__(self, other: "Monomial") -> "Monomial":
        self._check_ring(other)
        return Monomial(
            self.ring, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def _check_ring(self, other: "Monomial"):
        if self.ring != other.ring:
            raise PolyError("monomials over different rings")

    def divides(self, other: "Monomial") -> bool:
        self._check_ring(other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def degree(self) -> int:
        return sum(self.exponents)

    def is_one(self) -> bool:
        return not any(self.exponents)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def support(self) -> "Monomial":
        """Squarefree monomial on the same variables (radical)."""
        return Monomial(self.ring, tuple(1 if e else 0 for e in self.exponents))

    def __str__(self) -> str:
        parts = []
        for name, e in zip(self.ring.names, self.exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"Monomial({self})"

    def sort_key(self) -> tuple:
        return self.exponents


def parse_monomial(ring: VariableSet, text: str) -> Monomial:
    """Parse ``x1^2*x3`` (or ``1``) into a Monomial over `ring`."""
    text = text.strip()
    if text in ("1", ""):
        return ring.one()
    exps = [0] * len(ring)
    for factor in text.split("*"):
        factor = factor.strip()
        if factor == "1":
            continue
        if "^" in factor:
            name, _, k = factor.partition("^")
            try:
                e = int(k)
            except ValueError:
                raise PolyError(f"bad exponent in {factor!r}") from None
        else:
            name, e = factor, 1
        if e < 0:
            raise PolyError(f"negative exponent in {factor!r}")
        exps[ring.index(name.strip())] += e
    m = Monomial(ring, tuple(exps))
    return m


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    a._check_ring(b)
    return Monomial(a.ring, tuple(max(x, y) for x, y in zip(a.exponents, b.exponents)))


def monomial_gcd(a: Monomial, b: Monomial) -> Monomial:
    a._check_ring(b)
    return Monomial(a.ring, tuple(min(x, y) for x, y in zip(a.exponents, b.exponents)))


def monomial_divide(a: Monomial, b: Monomial) -> Monomial:
    """Exact division a/b; raises PolyError if b does not divide a."""
    a._check_ring(b)
    if not b.divides(a):
        raise PolyError(f"{b} does not divide {a}")
    return Monomial(a.ring, tuple(x - y for x, y in zip(a.exponents, b.exponents)))


def lcm_of(ms: Iterable[Monomial], ring: VariableSet | None = None) -> Monomial:
    ms = list(ms)
    if not ms:
        if ring is None:
            raise PolyError("lcm of empty family needs an explicit ring")
        return ring.one()
    return reduce(monomial_lcm, ms)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise PolyError(f"coefficients must be exact rationals, got {type(c).__name__}")


class Polynomial:
    """Sparse polynomial: Monomial -> Fraction, zero coefficients dropped."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: VariableSet, terms: dict[Monomial, Fraction] | None = None):
        self.ring = ring
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = _as_fraction(c)
                if c:
                    self.terms[m] = self.terms.get(m, Fraction(0)) + c
            self.terms = {m: c for m, c in self.terms.items() if c}

    @staticmethod
    def zero(ring: VariableSet) -> "Polynomial":
        return Polynomial(ring)

    @staticmethod
    def monomial(m: Monomial, c=1) -> "Polynomial":
        return Polynomial(m.ring, {m: _as_fraction(c)})

    @staticmethod
    def constant(ring: VariableSet, c) -> "Polynomial":
        return Polynomial(ring, {ring.one(): _as_fraction(c)})

    def copy(self) -> "Polynomial":
        p = Polynomial(self.ring)
        p.terms = dict(self.terms)
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            c2 = out.get(m, Fraction(0)) + c
            if c2:
                out[m] = c2
            else:
                out.pop(m, None)
        p = Polynomial(self.ring)
        p.terms = out
        return p

    def __neg__(self) -> "Polynomial":
        p = Polynomial(self.ring)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if not c:
                return Polynomial(self.ring)
            p = Polynomial(self.ring)
            p.terms = {m: c * c0 for m, c0 in self.terms.items()}
            return p
        if isinstance(other, Monomial):
            p = Polynomial(self.ring)
            p.terms = {m * other: c for m, c in self.terms.items()}
            return p
        if isinstance(other, Polynomial):
            out: dict[Monomial, Fraction] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = m1 * m2
                    c = out.get(m, Fraction(0)) + c1 * c2
                    if c:
                        out[m] = c
                    else:
                        out.pop(m, None)
            p = Polynomial(self.ring)
            p.terms = out
            return p
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def divide_by_monomial(self, m: Monomial) -> "Polynomial":
        """Exact division of every term by m; raises if any term fails."""
        p = Polynomial(self.ring)
        p.terms = {monomial_divide(t, m): c for t, c in self.terms.items()}
        return p

    def substitute_zero(self, names: Iterable[str]) -> "Polynomial":
        """Set the given variables to 0 (kill every term they divide)."""
        idx = [self.ring.index(n) for n in names]
        p = Polynomial(self.ring)
        p.terms = {
            m: c for m, c in self.terms.items() if not any(m.exponents[i] for i in idx)
        }
        return p

    def reinterpret(self, ring: VariableSet) -> "Polynomial":
        """Move to another VariableSet with the same name tuple (mask change)."""
        if ring.names != self.ring.names:
            raise PolyError("reinterpret requires identical variable names")
        p = Polynomial(ring)
        p.terms = {Monomial(ring, m.exponents): c for m, c in self.terms.items()}
        return p

    def eval_ones(self) -> Fraction:
        """Evaluate at x_i = 1 for every variable."""
        return sum(self.terms.values(), Fraction(0))

    def is_monomial_multiple(self) -> bool:
        return len(self.terms) == 1

    def single_term(self) -> tuple[Monomial, Fraction]:
        if len(self.terms) != 1:
            raise PolyError("polynomial is not a single term")
        [(m, c)] = self.terms.items()
        return m, c

    def is_nonzero_constant(self) -> bool:
        if len(self.terms) != 1:
            return False
        m, c = next(iter(self.terms.items()))
        return m.is_one() and bool(c)

    def constant_coefficient(self) -> Fraction:
        return self.terms.get(self.ring.one(), Fraction(0))

    def multidegree(self) -> Monomial | None:
        """If all terms share one monomial, return it; else None."""
        ms = set(self.terms)
        if len(ms) == 1:
            return next(iter(ms))
        return None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: m.sort_key(), reverse=True):
            c = self.terms[m]
            cs = str(c)
            if m.is_one():
                parts.append(cs)
            elif c == 1:
                parts.append(str(m))
            elif c == -1:
                parts.append(f"-{m}")
            else:
                parts.append(f"{cs}*{m}")
        out = parts[0]
        for t in parts[1:]:
            out += f" + {t}" if not t.startswith("-") else f" - {t[1:]}"
        return out

    __repr__ = __str__


def parse_polynomial(ring: VariableSet, text: str) -> Polynomial:
    """Parse a signed sum of rational-coefficient monomial terms."""
    text = text.strip().replace("- ", "-").replace("+ ", "+")
    if not text or text == "0":
        return Polynomial.zero(ring)
    # normalize to '+'-separated signed terms
    text = text.replace("-", "+-")
    out = Polynomial.zero(ring)
    for term in text.split("+"):
        term = term.strip()
        if not term:
            continue
        sign = 1
        if term.startswith("-"):
            sign = -1
            term = term[1:].strip()
        coeff = Fraction(1)
        rest = term
        m = re.match(r"^(\d+(?:/\d+)?)(?:\*(.*))?$", term)
        if m:
            coeff = Fraction(m.group(1))
            rest = m.group(2) or "1"
        out = out + Polynomial.monomial(parse_monomial(ring, rest), sign * coeff)
    return out


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by an ordered generator tuple.

    The generator order is data (Taylor/Lyubeznik constructions depend on
    it), so it is preserved verbatim; `minimalize` keeps relative order.
    """

    ring: VariableSet
    generators: tuple[Monomial, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.ring != self.ring:
                raise PolyError("generator over wrong ring")

    @staticmethod
    def from_strings(ring: VariableSet, gens: Sequence[str]) -> "MonomialIdeal":
        return MonomialIdeal(ring, tuple(parse_monomial(ring, g) for g in gens))

    def is_zero(self) -> bool:
        return not self.generators

    def contains_monomial(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.generators)

    def is_squarefree(self) -> bool:
        return all(g.is_squarefree() for g in self.generators)

    def is_minimal_system(self) -> bool:
        gens = self.generators
        for i, g in enumerate(gens):
            for j, h in enumerate(gens):
                if i != j and h.divides(g):
                    return False
        return True

    def reorder(self, order: Sequence[int] | Sequence[str]) -> "MonomialIdeal":
        """Reorder generators; `order` is a permutation of indices or of
        generator strings (each naming a generator exactly once)."""
        gens = list(self.generators)
        if all(isinstance(o, int) for o in order):
            idx = list(order)  # type: ignore[arg-type]
        else:
            strs = [str(g) for g in gens]
            idx = []
            for o in order:
                if str(o) not in strs:
                    raise PolyError(f"{o!r} is not a generator")
                idx.append(strs.index(str(o)))
        if sorted(idx) != list(range(len(gens))):
            raise PolyError("order must be a permutation of the generators")
        return MonomialIdeal(self.ring, tuple(gens[i] for i in idx))

    def to_json(self) -> dict:
        return {
            "variables": list(self.ring.names),
            "generators": [str(g) for g in self.generators],
            **({"inactive": [n for n, a in zip(self.ring.names, self.ring.active) if not a]}
               if not all(self.ring.active) else {}),
        }

    @staticmethod
    def from_json(d: dict) -> "MonomialIdeal":
        ring = VariableSet(tuple(d["variables"]))
        if d.get("inactive"):
            ring = ring.deactivate(d["inactive"])
        return MonomialIdeal.from_strings(ring, d["generators"])

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


def minimalize(ideal: MonomialIdeal) -> MonomialIdeal:
    """Drop generators divisible by another generator; order-stable.

    Among equal generators the first occurrence is kept.
    """
    kept: list[Monomial] = []
    gens = ideal.generators
    for i, g in enumerate(gens):
        redundant = False
        for j, h in enumerate(gens):
            if i == j:
                continue
            if h.divides(g) and (h != g or j < i):
                redundant = True
                break
        if not redundant:
            kept.append(g)
    return MonomialIdeal(ideal.ring, tuple(kept))


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    if a.ring != b.ring:
        raise PolyError("ideals over different rings")
    return minimalize(MonomialIdeal(a.ring, a.generators + b.generators))


def ideal_intersection(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """I cap J for monomial ideals: generated by pairwise lcms."""
    if a.ring != b.ring:
        raise PolyError("ideals over different rings")
    gens = tuple(monomial_lcm(f, g) for f in a.generators for g in b.generators)
    return minimalize(MonomialIdeal(a.ring, gens))


def ideal_colon_monomial(ideal: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    """(I : m) = (g / gcd(g, m) for g in G(I)), then minimalize."""
    gens = tuple(monomial_divide(g, monomial_gcd(g, m)) for g in ideal.generators)
    return minimalize(MonomialIdeal(ideal.ring, gens))


def ideal_colon(ideal: MonomialIdeal, other: "MonomialIdeal | Monomial") -> MonomialIdeal:
    """(I : J) = intersection over generators g of J of (I : g).

    (I : (1)) = I, so the unit ideal is allowed on the right.
    """
    if isinstance(other, Monomial):
        return ideal_colon_monomial(ideal, other)
    if other.is_zero():
        raise PolyError("colon by the zero ideal")
    parts = [ideal_colon_monomial(ideal, g) for g in other.generators]
    out = parts[0]
    for p in parts[1:]:
        out = ideal_intersection(out, p)
    return out


def ideal_product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    if a.ring != b.ring:
        raise PolyError("ideals over different rings")
    return minimalize(
        MonomialIdeal(a.ring, tuple(f * g for f in a.generators for g in b.generators))
    )


def monomials_up_to_degree(ring: VariableSet, d: int) -> Iterator[Monomial]:
    """All monomials of total degree <= d in the active variables."""
    act = [i for i, a in enumerate(ring.active) if a]

    def rec(pos: int, remaining: int, exps: list[int]):
        if pos == len(act):
            yield Monomial(ring, tuple(exps))
            return
        for e in range(remaining + 1):
            exps[act[pos]] = e
            yield from rec(pos + 1, remaining - e, exps)
        exps[act[pos]] = 0

    yield from rec(0, d, [0] * len(ring))


def squarefree_monomials(ring: VariableSet) -> Iterator[Monomial]:
    """All 0/1 exponent monomials in the active variables (2^n of them)."""
    act = [i for i, a in enumerate(ring.active) if a]
    if len(act) > 22:
        raise PolyError(f"refusing to enumerate 2^{len(act)} squarefree monomials")
    for bits in iproduct((0, 1), repeat=len(act)):
        exps = [0] * len(ring)
        for i, b in zip(act, bits):
            exps[i] = b
        yield Monomial(ring, tuple(exps))
