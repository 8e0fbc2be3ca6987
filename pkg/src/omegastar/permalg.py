"""Finitely presented mod-finite permutations of omega.

A presentation records how many one-sided forward orbits, one-sided
backward orbits and two-sided orbits a permutation has, together with a
finite list of cycle families describing its finite cycles.  Everything
the classifiers below need depends only on these counts and on which
cycle periods occur infinitely often.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterator, Union

__all__ = [
    "OMEGA", "Count", "Fixed", "FactorialFamily", "LcmFamily", "ArithmeticFamily",
    "CycleFamily", "PermPresentation", "AxiomTag", "Status", "Verdict", "Target",
    "PresentationError", "normalize", "index", "is_pan_divisible", "is_acyclic",
    "is_cyclic", "inverse", "join", "is_universal_CH", "is_chain_transitive_star",
    "is_chain_recurrent_star", "quotient_necessary_delta", "embeds_in", "catalog",
    "parse_name", "star_key", "to_json", "from_json",
]


class PresentationError(ValueError):
    pass


class _Omega:
    """The countably infinite cardinal, absorbing under addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ω"

    def __str__(self):
        return "ω"

    def __reduce__(self):
        return (_Omega, ())

    def __hash__(self):
        return hash("omega")

    def __eq__(self, other):
        return other is self

    def __add__(self, other):
        _check_count(other)
        return self

    __radd__ = __add__

    def __mul__(self, other):
        _check_count(other)
        return 0 if other == 0 else self

    __rmul__ = __mul__

    def __lt__(self, other):
        _check_count(other)
        return False

    def __le__(self, other):
        _check_count(other)
        return other is self

    def __gt__(self, other):
        _check_count(other)
        return other is not self

    def __ge__(self, other):
        _check_count(other)
        return True


OMEGA = _Omega()
Count = Union[int, _Omega]


def _check_count(value) -> None:
    if value is OMEGA:
        return
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise TypeError(f"not a count: {value!r}")


# --- cycle families ---------------------------------------------------------

@dataclass(frozen=True)
class Fixed:
    """``multiplicity`` cycles, each of the given period."""

    period: int
    multiplicity: Count = 1

    def __post_init__(self):
        if not isinstance(self.period, int) or self.period < 1:
            raise PresentationError(f"cycle period must be >= 1, got {self.period!r}")
        _check_count(self.multiplicity)

    @property
    def infinite(self) -> bool:
        return self.multiplicity is OMEGA


@dataclass(frozen=True)
class FactorialFamily:
    """One cycle of period n! for every n >= offset."""

    offset: int = 1

    def __post_init__(self):
        if not isinstance(self.offset, int) or self.offset < 0:
            raise PresentationError(f"offset must be a natural number, got {self.offset!r}")

    infinite = True


@dataclass(frozen=True)
class LcmFamily:
    """One cycle of period lcm(1, ..., n) for every n >= offset."""

    offset: int = 1

    def __post_init__(self):
        if not isinstance(self.offset, int) or self.offset < 0:
            raise PresentationError(f"offset must be a natural number, got {self.offset!r}")

    infinite = True


@dataclass(frozen=True)
class ArithmeticFamily:
    """One cycle of period a*n + b for every n >= 1."""

    a: int
    b: int = 0

    def __post_init__(self):
        if not isinstance(self.a, int) or self.a < 1:
            raise PresentationError(f"arithmetic family needs a >= 1, got {self.a!r}")
        if not isinstance(self.b, int) or self.b < 0:
            raise PresentationError(f"arithmetic family needs b >= 0, got {self.b!r}")

    infinite = True


CycleFamily = Union[Fixed, FactorialFamily, LcmFamily, ArithmeticFamily]

_FAMILY_ORDER = {Fixed: 0, FactorialFamily: 1, LcmFamily: 2, ArithmeticFamily: 3}


def _family_sort_key(fam: CycleFamily):
    if isinstance(fam, Fixed):
        return (0, fam.period)
    if isinstance(fam, ArithmeticFamily):
        return (3, fam.a, fam.b)
    return (_FAMILY_ORDER[type(fam)], fam.offset)


@dataclass(frozen=True)
class PermPresentation:
    n_orbits: int = 0
    bn_orbits: int = 0
    z_orbits: Count = 0
    spectrum: tuple = field(default_factory=tuple)

    def __post_init__(self):
        for name in ("n_orbits", "bn_orbits"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise PresentationError(f"{name} must be a finite natural number, got {value!r}")
        try:
            _check_count(self.z_orbits)
        except TypeError as exc:
            raise PresentationError(str(exc)) from None
        object.__setattr__(self, "spectrum", tuple(self.spectrum))
        for fam in self.spectrum:
            if type(fam) not in _FAMILY_ORDER:
                raise PresentationError(f"unknown cycle family {fam!r}")

    def __str__(self):
        spec = ", ".join(_family_str(f) for f in self.spectrum)
        return f"(n={self.n_orbits}, bn={self.bn_orbits}, z={self.z_orbits}, [{spec}])"


def _family_str(fam: CycleFamily) -> str:
    if isinstance(fam, Fixed):
        return f"Fixed({fam.period},{fam.multiplicity})"
    if isinstance(fam, ArithmeticFamily):
        return f"Arith({fam.a},{fam.b})"
    return f"{type(fam).__name__}({fam.offset})"


# --- verdicts ---------------------------------------------------------------

class AxiomTag(str, enum.Enum):
    ZFC = "ZFC"
    CH = "CH"
    OCA_MA = "OCA_MA"

    def __str__(self):
        return self.value

    @property
    def label(self) -> str:
        return "OCA+MA" if self is AxiomTag.OCA_MA else self.value


class Status(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Verdict:
    status: Status
    axiom: AxiomTag
    provenance: str
    key: str = ""

    def __post_init__(self):
        object.__setattr__(self, "status", Status(self.status))
        object.__setattr__(self, "axiom", AxiomTag(self.axiom))
        if self.status is Status.UNKNOWN and not any(
                phrase in self.provenance.lower() for phrase in ("open question", "necessary")):
            raise ValueError("an unknown verdict must cite an open question")

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    def to_dict(self) -> dict:
        return {"status": self.status.value, "axiom": self.axiom.value,
                "provenance": self.provenance, "key": self.key}

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        return cls(Status(data["status"]), AxiomTag(data["axiom"]),
                   data["provenance"], data.get("key", ""))


def _verdict(ok: bool, axiom: AxiomTag, provenance: str, key: str) -> Verdict:
    return Verdict(Status.HOLDS if ok else Status.FAILS, axiom, provenance, key)


# --- algebra ----------------------------------------------------------------

def normalize(p: PermPresentation) -> PermPresentation:
    """Merge opposite one-sided orbits into two-sided ones and sort the spectrum."""
    k = min(p.n_orbits, p.bn_orbits)
    fixed: dict[int, Count] = {}
    others = set()
    for fam in p.spectrum:
        if isinstance(fam, Fixed):
            if fam.multiplicity == 0:
                continue
            fixed[fam.period] = fixed.get(fam.period, 0) + fam.multiplicity
        else:
            others.add(fam)
    spectrum = [Fixed(period, mult) for period, mult in fixed.items()]
    spectrum.extend(others)
    spectrum.sort(key=_family_sort_key)
    return PermPresentation(p.n_orbits - k, p.bn_orbits - k, p.z_orbits + k, tuple(spectrum))


def index(p: PermPresentation) -> Count:
    """Forward plus backward one-sided orbits plus twice the two-sided ones."""
    q = normalize(p)
    return q.n_orbits + q.bn_orbits + 2 * q.z_orbits


def _has_infinite_family(p: PermPresentation) -> bool:
    return any(fam.infinite for fam in p.spectrum)


def is_pan_divisible(p: PermPresentation) -> bool:
    for fam in p.spectrum:
        if isinstance(fam, Fixed):
            # k = period + 1 never divides the period
            if fam.infinite:
                return False
        elif isinstance(fam, ArithmeticFamily):
            # a*n + b mod (a + 1) runs through every residue
            return False
    return True


def is_acyclic(p: PermPresentation) -> bool:
    return not _has_infinite_family(p)


def is_cyclic(p: PermPresentation) -> bool:
    q = normalize(p)
    return q.n_orbits == 0 and q.bn_orbits == 0 and q.z_orbits == 0


def inverse(p: PermPresentation) -> PermPresentation:
    return normalize(PermPresentation(p.bn_orbits, p.n_orbits, p.z_orbits, p.spectrum))


def join(p: PermPresentation, q: PermPresentation) -> PermPresentation:
    return normalize(PermPresentation(
        p.n_orbits + q.n_orbits,
        p.bn_orbits + q.bn_orbits,
        p.z_orbits + q.z_orbits,
        p.spectrum + q.spectrum,
    ))


def star_key(p: PermPresentation) -> PermPresentation:
    """Normal form with finitely many finite cycles discarded.

    Two presentations with the same key induce the same map on the
    remainder, since they differ only on a finite set.
    """
    q = normalize(p)
    return PermPresentation(q.n_orbits, q.bn_orbits, q.z_orbits,
                            tuple(f for f in q.spectrum if f.infinite))


# --- classifiers ------------------------------------------------------------

def is_universal_CH(p: PermPresentation) -> Verdict:
    q = normalize(p)
    ok = q.z_orbits is OMEGA and is_pan_divisible(q)
    return _verdict(ok, AxiomTag.CH,
                    "classification of universal trivial automorphisms: universal iff "
                    "infinitely many Z-orbits and pan-divisible", "universal-classification")


def is_chain_transitive_star(p: PermPresentation) -> Verdict:
    q = normalize(p)
    ok = (q.n_orbits + q.bn_orbits == 1 and q.z_orbits == 0 and is_acyclic(q))
    return _verdict(ok, AxiomTag.ZFC,
                    "the shift and its inverse are the only chain transitive trivial maps "
                    "(up to re-indexing)", "only-shifts-transitive")


def is_chain_recurrent_star(p: PermPresentation) -> Verdict:
    ok = index(p) is not OMEGA
    return _verdict(ok, AxiomTag.ZFC,
                    "p* is chain recurrent iff its index is finite", "recurrent-iff-finite-index")


def quotient_necessary_delta(p: PermPresentation, q: PermPresentation) -> Verdict:
    """Index bound on quotients: p* onto q* forces index(q) <= index(p)."""
    if index(q) > index(p):
        return Verdict(Status.FAILS, AxiomTag.OCA_MA,
                       "a quotient cannot raise the index", "index-bound")
    return Verdict(Status.UNKNOWN, AxiomTag.OCA_MA,
                   "index bound passes; the bound is necessary, not sufficient",
                   "index-bound")


class Target(str, enum.Enum):
    T_UP = "t_up"
    R_UP = "r_up"
    T_JOIN_R_UP = "t_join_r_up"

    def __str__(self):
        return self.value


class IndependentError(LookupError):
    """Raised when a question is settled differently under CH and OCA+MA."""


def embeds_in(p: PermPresentation, target, axioms) -> Verdict:
    """Does the lifting of ``p`` embed in the lifting of the target map?

    The answer is reported with the weakest axiom tag the argument needs.
    ZFC queries whose answer differs between CH and OCA+MA raise
    ``IndependentError``.
    """
    target = Target(target)
    axioms = AxiomTag(axioms)
    q = normalize(p)

    if target is Target.T_JOIN_R_UP:
        return Verdict(Status.HOLDS, AxiomTag.ZFC,
                       "every trivial automorphism embeds in the lifting of t or of t∨r",
                       "join-covers-all")

    if target is Target.T_UP:
        if is_acyclic(q):
            return Verdict(Status.HOLDS, AxiomTag.ZFC,
                           "acyclic trivial maps are quotients of t* (pasting construction)",
                           "t-covers-acyclic")
        if axioms is AxiomTag.CH:
            return Verdict(Status.HOLDS, AxiomTag.CH,
                           "the lifting of t is a universal automorphism", "t-universal")
        if axioms is AxiomTag.OCA_MA:
            return Verdict(Status.FAILS, AxiomTag.OCA_MA,
                           "an automorphism embeds in the lifting of t iff it is acyclic",
                           "t-embeds-iff-acyclic")
        raise IndependentError(
            f"{p}: embedding of a non-acyclic map in t_up holds under CH and fails under OCA+MA")

    # r_up
    if is_cyclic(q):
        return Verdict(Status.HOLDS, AxiomTag.ZFC,
                       "cyclic maps are quotients of r* via a finite-to-one map",
                       "r-covers-cyclic")
    if index(q) is OMEGA:
        return Verdict(Status.FAILS, AxiomTag.ZFC,
                       "r* is chain recurrent, quotients preserve chain recurrence, and p* is not "
                       "chain recurrent", "quotient-keeps-recurrence")
    if axioms is AxiomTag.CH:
        return Verdict(Status.HOLDS, AxiomTag.CH,
                       "the lifting of r is universal for chain recurrent automorphisms",
                       "r-universal-recurrent")
    if axioms is AxiomTag.OCA_MA:
        return Verdict(Status.FAILS, AxiomTag.OCA_MA,
                       "an automorphism embeds in the lifting of r iff it is cyclic",
                       "r-embeds-iff-cyclic")
    raise IndependentError(
        f"{p}: embedding of a chain recurrent non-cyclic map in r_up holds under CH "
        "and fails under OCA+MA")


# --- catalog ----------------------------------------------------------------

_SIMPLE = {
    "s": PermPresentation(1, 0, 0),
    "s_inv": PermPresentation(0, 1, 0),
    "r": PermPresentation(0, 0, 0, (FactorialFamily(1),)),
    "t": PermPresentation(0, 0, OMEGA),
    "z": PermPresentation(0, 0, 1),
    "empty": PermPresentation(),
}
_ALIASES = {"s^-1": "s_inv", "sinv": "s_inv", "s-1": "s_inv", "t_join_r": "t_join_r",
            "t∨r": "t_join_r", "t_or_r": "t_join_r", "s_join_s_inv": "s_join_s_inv",
            "s∨s⁻¹": "s_join_s_inv", "s⁻¹": "s_inv"}

CATALOG_NAMES = ("s", "s_inv", "r", "t", "z", "c_n", "t_join_r", "s_join_s_inv", "empty")


def parse_name(name: str, parameter: int | None = None) -> tuple[str, int | None]:
    """Split a canonical name into (base, parameter); ``c3`` and ``c_3`` both mean c with n=3."""
    raw = name.strip()
    raw = _ALIASES.get(raw, raw)
    if raw in ("c", "c_n"):
        if parameter is None:
            raise PresentationError("c_n needs a period parameter")
        return "c", parameter
    if raw.startswith("c"):
        digits = raw[1:].lstrip("_")
        if digits.isdigit():
            return "c", int(digits)
    if raw in _SIMPLE or raw in ("t_join_r", "s_join_s_inv", "u"):
        return raw, None
    raise PresentationError(f"unknown canonical name {name!r}")


def catalog(name: str, parameter: int | None = None) -> PermPresentation:
    base, n = parse_name(name, parameter)
    if base == "c":
        if n is None or n < 1:
            raise PresentationError(f"c_n needs a positive period, got {n!r}")
        return PermPresentation(0, 0, 0, (Fixed(n, OMEGA),))
    if base == "t_join_r":
        return join(_SIMPLE["t"], _SIMPLE["r"])
    if base == "s_join_s_inv":
        return join(_SIMPLE["s"], _SIMPLE["s_inv"])
    if base == "u":
        raise PresentationError("u is not a permutation and has no presentation")
    return _SIMPLE[base]


# --- serialization ----------------------------------------------------------

def _count_to_json(c: Count):
    return "omega" if c is OMEGA else c


def _count_from_json(value, where: str) -> Count:
    if value in ("omega", "ω"):
        return OMEGA
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise PresentationError(f"{where}: expected a natural number or \"omega\", got {value!r}")
    return value


def _family_to_json(fam: CycleFamily) -> dict:
    if isinstance(fam, Fixed):
        return {"kind": "fixed", "period": fam.period, "mult": _count_to_json(fam.multiplicity)}
    if isinstance(fam, FactorialFamily):
        return {"kind": "factorial", "offset": fam.offset}
    if isinstance(fam, LcmFamily):
        return {"kind": "lcm", "offset": fam.offset}
    return {"kind": "arith", "a": fam.a, "b": fam.b}


def _family_from_json(item, where: str) -> CycleFamily:
    if not isinstance(item, dict) or "kind" not in item:
        raise PresentationError(f"{where}: expected an object with a \"kind\" field")
    kind = item["kind"]
    try:
        if kind == "fixed":
            return Fixed(item["period"], _count_from_json(item.get("mult", 1), f"{where}.mult"))
        if kind == "factorial":
            return FactorialFamily(item.get("offset", 1))
        if kind == "lcm":
            return LcmFamily(item.get("offset", 1))
        if kind == "arith":
            return ArithmeticFamily(item["a"], item.get("b", 0))
    except KeyError as exc:
        raise PresentationError(f"{where}: missing field {exc.args[0]!r}") from None
    except PresentationError as exc:
        raise PresentationError(f"{where}: {exc}") from None
    raise PresentationError(f"{where}.kind: unknown family kind {kind!r}")


def to_json(p: PermPresentation) -> dict:
    return {
        "n": p.n_orbits,
        "bn": p.bn_orbits,
        "z": _count_to_json(p.z_orbits),
        "spectrum": [_family_to_json(f) for f in p.spectrum],
    }


def from_json(data) -> PermPresentation:
    """Parse the presentation object or a ``{"name": ...}`` shorthand."""
    if not isinstance(data, dict):
        raise PresentationError("presentation must be a JSON object")
    if "name" in data:
        return catalog(data["name"], data.get("parameter"))
    for key in ("n", "bn"):
        value = data.get(key, 0)
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise PresentationError(f"field {key!r}: expected a natural number, got {value!r}")
    spectrum = data.get("spectrum", [])
    if not isinstance(spectrum, list):
        raise PresentationError("field 'spectrum': expected a list")
    return PermPresentation(
        data.get("n", 0),
        data.get("bn", 0),
        _count_from_json(data.get("z", 0), "field 'z'"),
        tuple(_family_from_json(item, f"spectrum[{i}]") for i, item in enumerate(spectrum)),
    )


def periods(fam: CycleFamily, limit: int) -> Iterator[int]:
    """The first ``limit`` cycle periods of a family, in order."""
    if isinstance(fam, Fixed):
        count = limit if fam.infinite else min(limit, fam.multiplicity)
        for _ in range(count):
            yield fam.period
    elif isinstance(fam, FactorialFamily):
        for n in range(fam.offset, fam.offset + limit):
            yield math.factorial(n)
    elif isinstance(fam, LcmFamily):
        for n in range(fam.offset, fam.offset + limit):
            yield math.lcm(*range(1, n + 1))
    else:
        for n in range(1, limit + 1):
            yield fam.a * n + fam.b
