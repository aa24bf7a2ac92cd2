"""Exact one-dimensional interval algebra.

Intervals have independently open or closed bounds, rational (exact) finite
endpoints, and optionally infinite ends.  A finite union of intervals is kept
in a canonical form: the sorted list of its maximal subintervals.  This module
is the one-dimensional base case of the n-dimensional box algebra in
:mod:`cubicalc.areas`.

The empty set is never represented by an Interval; operations that may
produce it return ``None`` (or an empty list of parts) instead, which keeps
the nonemptiness invariant checkable at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from ._rat import Q, rat, rat_str

NEG_INF = float("-inf")
POS_INF = float("inf")

# Internal bound keys give every bound a total order with plain tuple
# comparison.  Lower bounds: closed (v, 0) precedes open (v, 1), so max()
# picks the more restrictive bound.  Upper bounds: open (v, -1) precedes
# closed (v, 0), so min() does the same.  An interval (lo_key, hi_key) is
# nonempty exactly when lo_key <= hi_key.
_LO_CLOSED, _LO_OPEN = 0, 1
_HI_OPEN, _HI_CLOSED = -1, 0


@dataclass(frozen=True)
class Endpoint:
    """One bound of an interval: a rational value or an infinity.

    ``kind`` is one of ``"-inf"``, ``"finite"``, ``"+inf"``.  Infinite
    endpoints carry no value and are always open.  Finite values are stored
    in lowest terms, so structural equality is semantic equality.
    """

    kind: str
    value: "Q | None" = None
    closed: bool = False

    def __post_init__(self):
        if self.kind == "finite":
            if self.value is None:
                raise ValueError("finite endpoint requires a value")
            object.__setattr__(self, "value", rat(self.value))
        elif self.kind in ("-inf", "+inf"):
            if self.value is not None or self.closed:
                raise ValueError("infinite endpoints carry no value and are open")
        else:
            raise ValueError(f"bad endpoint kind {self.kind!r}")

    @classmethod
    def neg_inf(cls) -> "Endpoint":
        return cls("-inf")

    @classmethod
    def pos_inf(cls) -> "Endpoint":
        return cls("+inf")

    @classmethod
    def at(cls, value, closed: bool = True) -> "Endpoint":
        return cls("finite", rat(value), closed)

    @property
    def finite(self) -> bool:
        return self.kind == "finite"


@dataclass(frozen=True)
class Interval:
    """A nonempty interval of the real line.

    The lower bound may be ``-inf`` and the upper ``+inf``; a point interval
    ``[q, q]`` has both bounds closed at the same value.  Construction
    validates nonemptiness, so every Interval instance denotes a nonempty
    point set.
    """

    lo: Endpoint
    hi: Endpoint
    _lo_key: tuple = field(init=False, repr=False, compare=False)
    _hi_key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.lo.kind == "+inf" or self.hi.kind == "-inf":
            raise ValueError("lower bound may not be +inf, nor upper -inf")
        lo_key = _lo_key_of(self.lo)
        hi_key = _hi_key_of(self.hi)
        if not lo_key <= hi_key:
            raise ValueError(f"empty interval: {self.lo} .. {self.hi}")
        object.__setattr__(self, "_lo_key", lo_key)
        object.__setattr__(self, "_hi_key", hi_key)

    def __hash__(self):
        return hash((self.lo, self.hi))

    def contains(self, q) -> bool:
        """Point membership, exact."""
        q = rat(q)
        return self._lo_key <= (q, _LO_CLOSED) and (q, _HI_CLOSED) <= self._hi_key

    def contains_interval(self, other: "Interval") -> bool:
        return self._lo_key <= other._lo_key and other._hi_key <= self._hi_key

    @property
    def is_point(self) -> bool:
        return self.lo.finite and self.hi.finite and self.lo.value == self.hi.value

    def __str__(self):
        lo = "(-inf" if not self.lo.finite else ("[" if self.lo.closed else "(") + rat_str(self.lo.value)
        hi = "+inf)" if not self.hi.finite else rat_str(self.hi.value) + ("]" if self.hi.closed else ")")
        return f"{lo}, {hi}"


def _lo_key_of(ep: Endpoint) -> tuple:
    if not ep.finite:
        return (NEG_INF, _LO_OPEN)
    return (ep.value, _LO_CLOSED if ep.closed else _LO_OPEN)


def _hi_key_of(ep: Endpoint) -> tuple:
    if not ep.finite:
        return (POS_INF, _HI_CLOSED)
    return (ep.value, _HI_CLOSED if ep.closed else _HI_OPEN)


def _lo_endpoint(key: tuple) -> Endpoint:
    if key[0] == NEG_INF:
        return Endpoint.neg_inf()
    return Endpoint("finite", key[0], key[1] == _LO_CLOSED)


def _hi_endpoint(key: tuple) -> Endpoint:
    if key[0] == POS_INF:
        return Endpoint.pos_inf()
    return Endpoint("finite", key[0], key[1] == _HI_CLOSED)


def _from_keys(lo_key: tuple, hi_key: tuple) -> Interval:
    return Interval(_lo_endpoint(lo_key), _hi_endpoint(hi_key))


def interval(lo=None, hi=None, lo_closed: bool = True, hi_closed: bool = True) -> Interval:
    """Convenience constructor; ``None`` bounds mean the respective infinity."""
    lo_ep = Endpoint.neg_inf() if lo is None else Endpoint.at(lo, lo_closed)
    hi_ep = Endpoint.pos_inf() if hi is None else Endpoint.at(hi, hi_closed)
    return Interval(lo_ep, hi_ep)


def point(q) -> Interval:
    """The one-point interval [q, q]."""
    return interval(q, q)


FULL_LINE = interval()


def interval_intersect(a: Interval, b: Interval) -> Optional[Interval]:
    """Set intersection; ``None`` when empty.

    The bound is the max of lowers / min of uppers; on a value tie the
    result is closed only where both inputs are.
    """
    lo = max(a._lo_key, b._lo_key)
    hi = min(a._hi_key, b._hi_key)
    if lo <= hi:
        return _from_keys(lo, hi)
    return None


def interval_complement(a: Interval) -> list[Interval]:
    """The maximal intervals of the complement of ``a`` in the real line.

    At most two pieces; closedness flips at each finite bound.  The
    complement of the full line is empty.
    """
    out = []
    if a.lo.finite:
        out.append(_from_keys((NEG_INF, _LO_OPEN),
                              (a.lo.value, _HI_OPEN if a.lo.closed else _HI_CLOSED)))
    if a.hi.finite:
        out.append(_from_keys((a.hi.value, _LO_OPEN if a.hi.closed else _LO_CLOSED),
                              (POS_INF, _HI_CLOSED)))
    return out


def _gap_between(hi_key: tuple, lo_key: tuple) -> bool:
    # True when a point separates the upper bound from the lower bound:
    # strictly below, or touching with both sides open.
    if hi_key[0] != lo_key[0]:
        return hi_key[0] < lo_key[0]
    return hi_key[1] == _HI_OPEN and lo_key[1] == _LO_OPEN


def interval_merge(a: Interval, b: Interval) -> Optional[Interval]:
    """``a`` union ``b`` if that union is an interval, else ``None``.

    The union is an interval when the two overlap or touch with at least one
    closed endpoint at the touching value.
    """
    if _gap_between(a._hi_key, b._lo_key) or _gap_between(b._hi_key, a._lo_key):
        return None
    return _from_keys(min(a._lo_key, b._lo_key), max(a._hi_key, b._hi_key))


@dataclass(frozen=True)
class OneDimArea:
    """A finite union of intervals in canonical form.

    ``parts`` is sorted by lower bound and holds exactly the maximal
    subintervals of the union: pairwise disjoint, never touching with a
    closed side.  The empty set is the empty tuple of parts.
    """

    parts: tuple[Interval, ...]

    def contains(self, q) -> bool:
        q = rat(q)
        return any(p.contains(q) for p in self.parts)

    @property
    def is_empty(self) -> bool:
        return not self.parts

    def __str__(self):
        return " u ".join(str(p) for p in self.parts) if self.parts else "(empty)"


def area1d_normalize(parts: Iterable[Interval]) -> OneDimArea:
    """Canonicalize a union of intervals: sort, then merge greedily.

    The output intervals are exactly the maximal subintervals of the union
    of the inputs; the denoted point set is unchanged.
    """
    todo = sorted(parts, key=lambda p: (p._lo_key, p._hi_key))
    merged: list[Interval] = []
    for nxt in todo:
        if merged:
            m = interval_merge(merged[-1], nxt)
            if m is not None:
                merged[-1] = m
                continue
        merged.append(nxt)
    return OneDimArea(tuple(merged))


EMPTY_1D = OneDimArea(())
FULL_1D = OneDimArea((FULL_LINE,))


def area1d_complement(a: OneDimArea) -> OneDimArea:
    """Complement of a canonical 1-D area, canonical again."""
    out = [FULL_LINE]
    for part in a.parts:
        pieces = interval_complement(part)
        out = [r for cur in out for p in pieces if (r := interval_intersect(cur, p))]
    return area1d_normalize(out)


def area1d_union(a: OneDimArea, b: OneDimArea) -> OneDimArea:
    return area1d_normalize(a.parts + b.parts)


# -- JSON encoding (shared with cubicalc.areas) ------------------------------


def _bound_to_json(ep: Endpoint) -> str:
    return ep.kind if not ep.finite else rat_str(ep.value)


def interval_to_json(a: Interval) -> dict:
    """Encode as {"lo": bound, "lo_closed": bool, "hi": bound, "hi_closed": bool}.

    Bounds are rationals rendered as "p/q" or "n" strings, or "-inf"/"+inf";
    the closed flags are always false on infinite bounds.
    """
    return {
        "lo": _bound_to_json(a.lo),
        "lo_closed": a.lo.closed,
        "hi": _bound_to_json(a.hi),
        "hi_closed": a.hi.closed,
    }


def interval_from_json(obj: dict) -> Interval:
    def bound(which: str, closed_key: str) -> Endpoint:
        raw, closed = obj[which], obj[closed_key]
        if raw in ("-inf", "+inf"):
            if closed:
                raise ValueError(f"infinite bound {raw!r} cannot be closed")
            return Endpoint(raw)
        return Endpoint.at(rat(str(raw)), closed)

    return Interval(bound("lo", "lo_closed"), bound("hi", "hi_closed"))
