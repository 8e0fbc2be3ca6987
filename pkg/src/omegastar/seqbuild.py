"""Pseudo-orbit sequences on finite windows of countable index sets.

An index scheme is a finite window of one of the index sets the action
rules live on: the naturals (successor), omega x omega (row successor),
omega x Z (two-sided row successor), the disjoint union of cycles of
length n! (cycle rotation) and G x omega for a group G given by words.
Sequences assign a state to every index in the window.  The builders
construct sequences whose dynamics track an action rule; the verifiers
report where a sequence fails to track one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from .chaindyn import (
    Chain, FiniteSystem, SystemSpecError, find_chain, parse_resolution, validate_chain,
)

__all__ = [
    "SequenceError", "NoChainError", "NotFoundError", "SchemeMismatch",
    "FreeReduction", "AbelianNormalForm", "Nat", "NatCross", "RowsByZ", "FactorialCycles",
    "GroupCross", "ActionRule", "IndexedSequence", "Violation", "ViolationReport",
    "verify_p_like", "verify_phi_like", "tail_dense_check", "build_group_like",
    "build_t_like", "build_s_like", "build_r_like", "extract_chain", "extract_self_chain",
    "dense_enumeration", "scheme_from_dict", "group_rules", "inverse_flows", "parse_window",
]


class SequenceError(ValueError):
    pass


class NoChainError(SequenceError):
    pass


class NotFoundError(SequenceError):
    pass


class SchemeMismatch(SequenceError):
    pass


# --- group words ------------------------------------------------------------

@dataclass(frozen=True)
class FreeReduction:
    """Cancel adjacent letter/inverse pairs; with no inverses words are left alone."""

    inverses: tuple = ()

    def __post_init__(self):
        pairs = dict(self.inverses)
        for a, b in list(pairs.items()):
            if pairs.setdefault(b, a) != a:
                raise SequenceError(f"inconsistent inverse for {b!r}")
        object.__setattr__(self, "inverses", tuple(sorted(pairs.items())))

    def __call__(self, word: tuple) -> tuple:
        inv = dict(self.inverses)
        out: list = []
        for letter in word:
            if out and inv.get(out[-1]) == letter:
                out.pop()
            else:
                out.append(letter)
        return tuple(out)

    def to_dict(self) -> dict:
        return {"kind": "free", "inverses": {a: b for a, b in self.inverses}}


@dataclass(frozen=True)
class AbelianNormalForm:
    """Free abelian group on ``generators``: each entry is (letter, inverse letter)."""

    generators: tuple

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(tuple(g) for g in self.generators))

    def __call__(self, word: tuple) -> tuple:
        exponent = {g: 0 for g, _ in self.generators}
        sign = {}
        for g, inv in self.generators:
            sign[g] = (g, 1)
            sign[inv] = (g, -1)
        for letter in word:
            if letter not in sign:
                raise SequenceError(f"letter {letter!r} is not in the alphabet")
            g, e = sign[letter]
            exponent[g] += e
        out: list = []
        for g, inv in self.generators:
            e = exponent[g]
            out.extend([g] * e if e >= 0 else [inv] * -e)
        return tuple(out)

    def to_dict(self) -> dict:
        return {"kind": "abelian", "generators": [list(g) for g in self.generators]}


def _normal_form_from_dict(data) -> Callable:
    kind = data.get("kind")
    if kind == "free":
        return FreeReduction(tuple(data.get("inverses", {}).items()))
    if kind == "abelian":
        return AbelianNormalForm(tuple(tuple(g) for g in data["generators"]))
    raise SequenceError(f"unknown normal form {kind!r}")


# --- index schemes ----------------------------------------------------------

def _positive(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 1:
        raise SequenceError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class Nat:
    horizon: int

    def __post_init__(self):
        _positive("horizon", self.horizon)

    def indices(self) -> list:
        return [(n,) for n in range(self.horizon)]

    def contains(self, idx) -> bool:
        return len(idx) == 1 and 0 <= idx[0] < self.horizon

    def to_dict(self) -> dict:
        return {"kind": "nat", "horizon": self.horizon}


@dataclass(frozen=True)
class NatCross:
    rows: int
    horizon: int

    def __post_init__(self):
        _positive("rows", self.rows)
        _positive("horizon", self.horizon)

    def indices(self) -> list:
        idx = [(m, n) for m in range(self.rows) for n in range(self.horizon)]
        return sorted(idx, key=lambda i: (max(i), i))

    def contains(self, idx) -> bool:
        return len(idx) == 2 and 0 <= idx[0] < self.rows and 0 <= idx[1] < self.horizon

    def to_dict(self) -> dict:
        return {"kind": "nat_cross", "rows": self.rows, "horizon": self.horizon}


@dataclass(frozen=True)
class RowsByZ:
    rows: int
    width: int

    def __post_init__(self):
        _positive("rows", self.rows)
        _positive("width", self.width)

    def indices(self) -> list:
        idx = [(n, z) for n in range(self.rows) for z in range(-self.width, self.width + 1)]
        return sorted(idx, key=lambda i: (max(i[0], abs(i[1])), i))

    def contains(self, idx) -> bool:
        return len(idx) == 2 and 0 <= idx[0] < self.rows and -self.width <= idx[1] <= self.width

    def to_dict(self) -> dict:
        return {"kind": "rows_by_z", "rows": self.rows, "width": self.width}


@dataclass(frozen=True)
class FactorialCycles:
    """Rows n = 1..max_n, row n being a cycle of length n!."""

    max_n: int

    def __post_init__(self):
        _positive("max_n", self.max_n)
        if self.max_n > 8:
            raise SequenceError("max_n above 8 gives windows of more than 40320 entries per row")

    def indices(self) -> list:
        return [(n, m) for n in range(1, self.max_n + 1) for m in range(math.factorial(n))]

    def contains(self, idx) -> bool:
        return len(idx) == 2 and 1 <= idx[0] <= self.max_n and 0 <= idx[1] < math.factorial(idx[0])

    def to_dict(self) -> dict:
        return {"kind": "factorial_cycles", "max_n": self.max_n}


@dataclass(frozen=True)
class GroupCross:
    """Normal-form words of length at most ``length``, times ``horizon`` copies."""

    alphabet: tuple
    length: int
    horizon: int
    normal_form: Callable = field(default_factory=FreeReduction)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        if self.length < 0:
            raise SequenceError("word length bound must be non-negative")
        _positive("horizon", self.horizon)

    def words(self) -> list:
        seen = {}
        order = {a: i for i, a in enumerate(self.alphabet)}
        for k in range(self.length + 1):
            for w in itertools.product(self.alphabet, repeat=k):
                nf = self.normal_form(w)
                if len(nf) <= self.length:
                    seen[nf] = None
        return sorted(seen, key=lambda w: (len(w), [order[a] for a in w]))

    def indices(self) -> list:
        words = self.words()
        rank = {w: i for i, w in enumerate(words)}
        idx = [(w, n) for w in words for n in range(self.horizon)]
        return sorted(idx, key=lambda i: (max(len(i[0]), i[1]), i[1], rank[i[0]]))

    def contains(self, idx) -> bool:
        if len(idx) != 2:
            return False
        w, n = idx
        return 0 <= n < self.horizon and len(w) <= self.length and self.normal_form(w) == tuple(w)

    def to_dict(self) -> dict:
        return {"kind": "group_cross", "alphabet": list(self.alphabet), "length": self.length,
                "horizon": self.horizon, "normal_form": self.normal_form.to_dict()}


Scheme = Nat | NatCross | RowsByZ | FactorialCycles | GroupCross


def scheme_from_dict(data) -> Scheme:
    if not isinstance(data, dict):
        raise SequenceError("scheme must be a JSON object")
    kind = data.get("kind")
    try:
        if kind == "nat":
            return Nat(data["horizon"])
        if kind == "nat_cross":
            return NatCross(data["rows"], data["horizon"])
        if kind == "rows_by_z":
            return RowsByZ(data["rows"], data["width"])
        if kind == "factorial_cycles":
            return FactorialCycles(data["max_n"])
        if kind == "group_cross":
            nf = _normal_form_from_dict(data.get("normal_form", {"kind": "free"}))
            return GroupCross(tuple(data["alphabet"]), data["length"], data["horizon"], nf)
    except KeyError as exc:
        raise SequenceError(f"scheme {kind!r} is missing field {exc.args[0]!r}") from None
    raise SequenceError(f"unknown scheme kind {kind!r}")


_WINDOW_KEYS = {
    "s": ("horizon",), "u": ("rows", "horizon"), "t": ("rows", "width"), "r": ("max_n",),
}


def parse_window(kind: str, spec: str) -> Scheme:
    """Parse a ``key=value,...`` window spec for the scheme that goes with ``kind``."""
    values = {}
    for part in filter(None, (p.strip() for p in spec.split(","))):
        key, sep, value = part.partition("=")
        if not sep or not value.strip().lstrip("-").isdigit():
            raise SequenceError(f"bad window component {part!r}; expected key=integer")
        values[key.strip().replace("-", "_")] = int(value)
    wanted = _WINDOW_KEYS.get(kind)
    if wanted is None:
        raise SequenceError(f"no window spec for rule {kind!r}")
    missing = [k for k in wanted if k not in values]
    if missing:
        raise SequenceError(f"window for {kind!r} needs {', '.join(missing)}")
    args = [values[k] for k in wanted]
    return {"s": Nat, "u": NatCross, "t": RowsByZ, "r": FactorialCycles}[kind](*args)


# --- action rules -----------------------------------------------------------

_RULE_SCHEME = {"s": Nat, "t": RowsByZ, "r": FactorialCycles, "u": NatCross, "g": GroupCross}


@dataclass(frozen=True)
class ActionRule:
    """One index rule: ``s``, ``t``, ``r``, ``u`` or ``g`` (left multiplication by a letter)."""

    kind: str
    generator: Optional[str] = None

    def __post_init__(self):
        if self.kind not in _RULE_SCHEME:
            raise SequenceError(f"unknown action rule {self.kind!r}")
        if (self.kind == "g") != (self.generator is not None):
            raise SequenceError("the group rule takes exactly one generator letter")

    @property
    def name(self) -> str:
        return f"g[{self.generator}]" if self.kind == "g" else self.kind

    def check(self, scheme) -> None:
        if not isinstance(scheme, _RULE_SCHEME[self.kind]):
            raise SchemeMismatch(f"rule {self.name} does not act on {type(scheme).__name__}")
        if self.kind == "g" and self.generator not in scheme.alphabet:
            raise SchemeMismatch(f"generator {self.generator!r} is not in the alphabet")

    def apply(self, idx, scheme):
        if self.kind == "s":
            return (idx[0] + 1,)
        if self.kind in ("t", "u"):
            return (idx[0], idx[1] + 1)
        if self.kind == "r":
            n, m = idx
            return (n, (m + 1) % math.factorial(n))
        w, n = idx
        return (scheme.normal_form((self.generator,) + tuple(w)), n)


def group_rules(scheme: GroupCross) -> list:
    return [ActionRule("g", a) for a in scheme.alphabet]


# --- sequences --------------------------------------------------------------

def _index_to_json(idx) -> list:
    return [list(part) if isinstance(part, tuple) else part for part in idx]


def _index_from_json(raw) -> tuple:
    return tuple(tuple(part) if isinstance(part, list) else part for part in raw)


@dataclass
class IndexedSequence:
    scheme: Scheme
    assignment: dict
    segments: tuple = ()

    def __post_init__(self):
        order = self.scheme.indices()
        missing = [i for i in order if i not in self.assignment]
        if missing:
            raise SequenceError(f"{len(missing)} in-window indices unassigned, first {missing[0]}")
        extra = len(self.assignment) - len(order)
        if extra:
            raise SequenceError(f"{extra} assigned indices lie outside the window")
        self._order = order

    @property
    def order(self) -> list:
        return self._order

    def __getitem__(self, idx):
        return self.assignment[idx]

    def __len__(self):
        return len(self._order)

    def states(self) -> list:
        return [self.assignment[i] for i in self._order]

    def to_dict(self) -> dict:
        data = {
            "scheme": self.scheme.to_dict(),
            "entries": [{"index": _index_to_json(i), "state": self.assignment[i]} for i in self._order],
        }
        if self.segments:
            data["segments"] = list(self.segments)
        return data

    @classmethod
    def from_dict(cls, data) -> "IndexedSequence":
        if not isinstance(data, dict) or "scheme" not in data or "entries" not in data:
            raise SequenceError("sequence must be an object with 'scheme' and 'entries'")
        scheme = scheme_from_dict(data["scheme"])
        assignment = {}
        for k, entry in enumerate(data["entries"]):
            try:
                assignment[_index_from_json(entry["index"])] = entry["state"]
            except (KeyError, TypeError):
                raise SequenceError(f"entries[{k}]: expected {{'index': [...], 'state': ...}}") from None
        return cls(scheme, assignment, tuple(data.get("segments", ())))

    def __eq__(self, other):
        return (isinstance(other, IndexedSequence) and self.scheme == other.scheme
                and self.assignment == other.assignment and self.segments == other.segments)


@dataclass(frozen=True)
class Violation:
    index: tuple
    rule: str
    distance: Fraction

    def to_dict(self) -> dict:
        d = self.distance
        return {"index": _index_to_json(self.index), "rule": self.rule,
                "distance": d.numerator if d.denominator == 1 else f"{d.numerator}/{d.denominator}"}


@dataclass
class ViolationReport:
    violations: list
    tail_ok_from: Optional[tuple]
    tail_ok_position: Optional[int]
    checked: int
    skipped: int
    eps: Fraction

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        e = self.eps
        return {
            "eps": e.numerator if e.denominator == 1 else f"{e.numerator}/{e.denominator}",
            "checked": self.checked,
            "skipped": self.skipped,
            "tail_ok_from": None if self.tail_ok_from is None else _index_to_json(self.tail_ok_from),
            "tail_ok_position": self.tail_ok_position,
            "violations": [v.to_dict() for v in self.violations],
        }


def _check_states(seq: IndexedSequence, sys: FiniteSystem) -> None:
    known = sys.position
    for idx in seq.order:
        if seq.assignment[idx] not in known:
            raise SequenceError(f"state {seq.assignment[idx]!r} at {idx} is not a state of the system")


def _eps(eps) -> Fraction:
    res = parse_resolution(eps)
    if isinstance(res, str):
        raise SequenceError(f"expected a positive rational epsilon, got {eps!r}")
    return res


def verify_phi_like(seq: IndexedSequence, rules: Sequence[ActionRule], sys: FiniteSystem,
                    eps, flows: Optional[Mapping[str, Mapping]] = None) -> ViolationReport:
    """Check f_p(x_i) against x_(p(i)) for every rule p.

    f_p is the system map, except that a group rule uses ``flows[letter]``
    when given.
    """
    eps = _eps(eps)
    if sys.metric is None:
        raise SystemSpecError("verification needs a metric")
    if not rules:
        raise SequenceError("at least one rule is needed")
    maps = []
    for rule in rules:
        rule.check(seq.scheme)
        m = sys.map
        if rule.kind == "g" and flows is not None:
            if rule.generator not in flows:
                raise SequenceError(f"no state map for generator {rule.generator!r}")
            m = flows[rule.generator]
        maps.append(m)
    _check_states(seq, sys)
    violations = []
    checked = skipped = 0
    last_bad = -1
    for pos, idx in enumerate(seq.order):
        x = seq.assignment[idx]
        for rule, m in zip(rules, maps):
            fx = m[x]
            img = rule.apply(idx, seq.scheme)
            if not seq.scheme.contains(img):
                skipped += 1
                continue
            checked += 1
            d = sys.dist(fx, seq.assignment[img])
            if d >= eps:
                violations.append(Violation(idx, rule.name, d))
                last_bad = pos
    if last_bad + 1 < len(seq.order):
        tail_pos = last_bad + 1
        tail_idx = seq.order[tail_pos]
    else:
        tail_pos = tail_idx = None
    return ViolationReport(violations, tail_idx, tail_pos, checked, skipped, eps)


def verify_p_like(seq: IndexedSequence, rule: ActionRule, sys: FiniteSystem, eps,
                  flows: Optional[Mapping[str, Mapping]] = None) -> ViolationReport:
    return verify_phi_like(seq, [rule], sys, eps, flows)


def tail_dense_check(seq: IndexedSequence, sys: FiniteSystem, cover: str, prefix: int) -> bool:
    """Every block of ``cover`` meets the sequence after its first ``prefix`` entries."""
    if prefix < 0 or prefix >= len(seq):
        raise SequenceError(f"prefix {prefix} must be below the window size {len(seq)}")
    tail = {seq.assignment[i] for i in seq.order[prefix:]}
    return all(tail & block for block in sys.cover(cover))


# --- builders ---------------------------------------------------------------

def dense_enumeration(sys: FiniteSystem, passes: int = 2) -> list:
    """Every state in order, ``passes`` times, closed up with the first state."""
    return list(sys.states) * passes + [sys.states[0]]


def inverse_flows(flows: Mapping[str, Mapping], inverses: Mapping[str, str]) -> dict:
    """Add the inverse bijection for every letter named in ``inverses``."""
    out = {a: dict(m) for a, m in flows.items()}
    for a, b in inverses.items():
        if a in out and b not in out:
            out[b] = {y: x for x, y in out[a].items()}
    return out


def build_group_like(flows: Mapping[str, Mapping], sys: FiniteSystem, dense_seq: Sequence,
                     scheme: GroupCross) -> IndexedSequence:
    """x_(w, n) = psi_w(d_n), where psi_w composes the letter maps of the word w."""
    if not dense_seq:
        raise SequenceError("dense sequence is empty")
    for a in scheme.alphabet:
        if a not in flows:
            raise SequenceError(f"no state map for generator {a!r}")
        m = flows[a]
        if set(m) != set(sys.states) or set(m.values()) != set(sys.states):
            raise SequenceError(f"generator {a!r} does not act as a bijection on the states")
    for d in dense_seq:
        if d not in sys.position:
            raise SequenceError(f"dense sequence contains unknown state {d!r}")
    assignment = {}
    for w in scheme.words():
        for n in range(scheme.horizon):
            x = dense_seq[n % len(dense_seq)]
            for letter in reversed(w):
                x = flows[letter][x]
            assignment[(w, n)] = x
    return IndexedSequence(scheme, assignment)


def build_t_like(sys: FiniteSystem, dense_seq: Sequence, scheme: RowsByZ,
                 preimage_policy: str = "least-label") -> IndexedSequence:
    """Exact two-sided orbits through d_n, backwards by least-position preimages."""
    if preimage_policy != "least-label":
        raise SequenceError(f"unknown preimage policy {preimage_policy!r}")
    if not sys.is_surjective():
        raise SequenceError("build_t_like needs a surjective map")
    if not dense_seq:
        raise SequenceError("dense sequence is empty")
    preimage = {}
    for x in reversed(sys.states):
        preimage[sys.map[x]] = x
    assignment = {}
    for n in range(scheme.rows):
        x = dense_seq[n % len(dense_seq)]
        assignment[(n, 0)] = x
        for z in range(1, scheme.width + 1):
            x = sys.map[x]
            assignment[(n, z)] = x
        x = assignment[(n, 0)]
        for z in range(-1, -scheme.width - 1, -1):
            x = preimage[x]
            assignment[(n, z)] = x
    return IndexedSequence(scheme, assignment)


def _schedule(eps_schedule, needed: int) -> list:
    sched = [_eps(e) for e in eps_schedule]
    if len(sched) < needed:
        raise SequenceError(f"epsilon schedule has {len(sched)} entries, {needed} needed")
    if any(b > a for a, b in zip(sched, sched[1:])):
        raise SequenceError("epsilon schedule must be decreasing")
    return sched


def build_s_like(sys: FiniteSystem, dense_seq: Sequence, eps_schedule) -> IndexedSequence:
    """Concatenate shortest eps_k-chains from d_k to d_(k+1)."""
    if sys.metric is None:
        raise SystemSpecError("build_s_like needs a metric")
    if not dense_seq:
        raise SequenceError("dense sequence is empty")
    sched = _schedule(eps_schedule, len(dense_seq) - 1)
    points = [dense_seq[0]]
    starts = []
    for k in range(len(dense_seq) - 1):
        a, b = dense_seq[k], dense_seq[k + 1]
        chain = find_chain(sys, sched[k], a, b)
        if chain is None:
            raise NoChainError(f"no {sched[k]}-chain from {a!r} to {b!r} (pair {k})")
        starts.append(len(points) - 1)
        points.extend(chain.points[1:])
    scheme = Nat(len(points))
    return IndexedSequence(scheme, {(n,): x for n, x in enumerate(points)}, tuple(starts))


def build_r_like(sys: FiniteSystem, dense_seq: Sequence, eps_schedule,
                 scheme: FactorialCycles) -> IndexedSequence:
    """Wrap the n!-cycles of the window around eps_k self-chains at d_k.

    Chain k is repeated until its length n_k exceeds n_(k-1); rows n with
    n_k <= n < n_(k+1) use chain k, rows below n_1 hold d_0.
    """
    if sys.metric is None:
        raise SystemSpecError("build_r_like needs a metric")
    if not dense_seq:
        raise SequenceError("dense sequence is empty")
    sched = _schedule(eps_schedule, len(dense_seq))
    chains = []
    lengths = []
    prev = 0
    for k, d in enumerate(dense_seq):
        chain = find_chain(sys, sched[k], d, d)
        if chain is None:
            raise NoChainError(f"no {sched[k]}-chain from {d!r} to itself (point {k})")
        raw = list(chain.points[:-1])
        n_k = (prev // len(raw) + 1) * len(raw)
        chains.append(raw * (n_k // len(raw)))
        lengths.append(n_k)
        prev = n_k
    assignment = {}
    k = -1
    for n in range(1, scheme.max_n + 1):
        while k + 1 < len(lengths) and lengths[k + 1] <= n:
            k += 1
        size = math.factorial(n)
        if k < 0:
            for m in range(size):
                assignment[(n, m)] = dense_seq[0]
            continue
        padded = chains[k]
        assert size % len(padded) == 0, "chain length must divide n!"
        for m in range(size):
            assignment[(n, m)] = padded[m % len(padded)]
    return IndexedSequence(scheme, assignment, tuple(lengths))


# --- extraction -------------------------------------------------------------

def extract_chain(seq: IndexedSequence, sys: FiniteSystem, a, b, eps) -> Chain:
    """Splice an eps-chain from ``a`` to ``b`` out of the good tail of an s-like sequence."""
    eps = _eps(eps)
    if not isinstance(seq.scheme, Nat):
        raise SchemeMismatch("extract_chain needs a sequence indexed by the naturals")
    report = verify_p_like(seq, ActionRule("s"), sys, eps)
    if report.tail_ok_position is None:
        raise NotFoundError(f"the window has no {eps}-good tail")
    xs = seq.states()
    start = report.tail_ok_position
    fa = sys.map[a]
    for m in range(start, len(xs)):
        if sys.dist(fa, xs[m]) >= eps:
            continue
        for j in range(m, len(xs)):
            if sys.dist(sys.map[xs[j]], b) < eps:
                chain = Chain((a, *xs[m:j + 1], b), eps)
                if validate_chain(sys, chain):
                    return chain
        break
    raise NotFoundError(f"no {eps}-chain from {a!r} to {b!r} inside the window")


def extract_self_chain(seq: IndexedSequence, sys: FiniteSystem, a, eps) -> Chain:
    """Close an eps-chain at ``a`` by running once around a delta-good n!-cycle.

    delta is eps/2.  A candidate entry x close to ``a`` is accepted only when
    the realized steps satisfy both closure conditions: f(previous) is within
    eps of ``a`` and f(a) is within eps of the entry after x.
    """
    eps = _eps(eps)
    if not isinstance(seq.scheme, FactorialCycles):
        raise SchemeMismatch("extract_self_chain needs a sequence on factorial cycles")
    delta = eps / 2
    report = verify_p_like(seq, ActionRule("r"), sys, delta)
    bad_rows = {v.index[0] for v in report.violations}
    for n in range(1, seq.scheme.max_n + 1):
        if n in bad_rows:
            continue
        size = math.factorial(n)
        row = [seq.assignment[(n, m)] for m in range(size)]
        for m, x in enumerate(row):
            if sys.dist(a, x) >= delta:
                continue
            before = row[(m - 1) % size]
            after = row[(m + 1) % size]
            if sys.dist(sys.map[before], a) >= eps or sys.dist(sys.map[a], after) >= eps:
                continue
            chain = Chain((a, *(row[(m + i) % size] for i in range(1, size)), a), eps)
            if validate_chain(sys, chain):
                return chain
    raise NotFoundError(f"no entry within {delta} of {a!r} on a {delta}-good cycle")
