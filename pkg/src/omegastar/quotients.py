"""Equivariant maps between finite systems.

A quotient from g to f is a surjection pi with pi(g(x)) = f(pi(x)); a
subquotient drops surjectivity.  Finite systems are discrete, so every map
is continuous and the search is purely combinatorial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .chaindyn import FiniteSystem, SystemSpecError, is_chain_recurrent, is_chain_transitive

__all__ = [
    "EquivariantMap", "BudgetExhausted", "QuotientError", "verify_equivariant",
    "find_quotient", "find_subquotient", "search", "paste", "compose", "preservation_test",
    "disjoint_union",
]


class QuotientError(ValueError):
    pass


class BudgetExhausted(RuntimeError):
    def __init__(self, steps: int):
        super().__init__(f"search budget of {steps} steps exhausted")
        self.steps = steps


@dataclass(frozen=True)
class EquivariantMap:
    source: FiniteSystem
    target: FiniteSystem
    assignment: dict
    surjective: bool

    @classmethod
    def build(cls, source: FiniteSystem, target: FiniteSystem, assignment) -> "EquivariantMap":
        """Construct with the surjective flag computed from the image."""
        assignment = dict(assignment)
        return cls(source, target, assignment, set(assignment.values()) == set(target.states))

    def image(self) -> frozenset:
        return frozenset(self.assignment.values())

    def to_dict(self) -> dict:
        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "assignment": {x: self.assignment[x] for x in self.source.states if x in self.assignment},
            "surjective": self.surjective,
        }

    @classmethod
    def from_dict(cls, data) -> "EquivariantMap":
        if not isinstance(data, dict):
            raise QuotientError("equivariant map must be a JSON object")
        for key in ("source", "target", "assignment", "surjective"):
            if key not in data:
                raise QuotientError(f"equivariant map is missing field {key!r}")
        return cls(FiniteSystem.from_dict(data["source"]), FiniteSystem.from_dict(data["target"]),
                   dict(data["assignment"]), bool(data["surjective"]))

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def verify_equivariant(m: EquivariantMap) -> bool:
    src, tgt, pi = m.source, m.target, m.assignment
    if set(pi) != set(src.states):
        return False
    if not set(pi.values()) <= set(tgt.states):
        return False
    if any(pi[src.map[x]] != tgt.map[pi[x]] for x in src.states):
        return False
    return m.surjective == (set(pi.values()) == set(tgt.states))


def search(g_sys: FiniteSystem, f_sys: FiniteSystem, surjective: bool,
           budget: Optional[int] = None) -> Optional[EquivariantMap]:
    """Backtracking search for the least equivariant map.

    Variables are source states in declared order, values target states in
    declared order, so the first solution found is lexicographically least.
    Each assignment pi(x) = y forces pi(g^k(x)) = f^k(y) along the forward
    orbit, which is propagated at once.  ``budget`` caps the number of value
    trials; running out raises BudgetExhausted.
    """
    src, tgt = g_sys.states, f_sys.states
    gmap, fmap = g_sys.map, f_sys.map
    n_target = len(tgt)
    if surjective and n_target > len(src):
        return None
    steps = 0
    pi: dict = {}

    def assign(x, y) -> Optional[list]:
        # forced trail, or None on conflict; pi is restored by the caller
        trail = []
        while True:
            cur = pi.get(x)
            if cur is not None:
                return trail if cur == y else _undo(trail)
            pi[x] = y
            trail.append(x)
            x, y = gmap[x], fmap[y]

    def _undo(trail):
        for z in trail:
            del pi[z]
        return None

    def feasible() -> bool:
        if not surjective:
            return True
        free = len(src) - len(pi)
        return n_target - len(set(pi.values())) <= free

    def rec(i: int) -> bool:
        nonlocal steps
        while i < len(src) and src[i] in pi:
            i += 1
        if i == len(src):
            return not surjective or len(set(pi.values())) == n_target
        x = src[i]
        for y in tgt:
            steps += 1
            if budget is not None and steps > budget:
                raise BudgetExhausted(budget)
            trail = assign(x, y)
            if trail is None:
                continue
            if feasible() and rec(i + 1):
                return True
            _undo(trail)
        return False

    if rec(0):
        return EquivariantMap.build(g_sys, f_sys, pi)
    return None


def find_quotient(g_sys: FiniteSystem, f_sys: FiniteSystem,
                  budget: Optional[int] = None) -> Optional[EquivariantMap]:
    return search(g_sys, f_sys, surjective=True, budget=budget)


def find_subquotient(g_sys: FiniteSystem, f_sys: FiniteSystem,
                     budget: Optional[int] = None) -> Optional[EquivariantMap]:
    return search(g_sys, f_sys, surjective=False, budget=budget)


def disjoint_union(systems: Sequence[FiniteSystem]) -> FiniteSystem:
    """Union of systems with pairwise disjoint state labels (no metric kept)."""
    states: list = []
    mapping: dict = {}
    for sys in systems:
        overlap = set(states) & set(sys.states)
        if overlap:
            raise QuotientError(f"sources overlap on {sorted(overlap)}")
        states.extend(sys.states)
        mapping.update(sys.map)
    return FiniteSystem(tuple(states), mapping)


def paste(maps: Sequence[EquivariantMap], union: Optional[FiniteSystem] = None) -> EquivariantMap:
    """Paste maps with disjoint sources and a common target into one map on the union."""
    if not maps:
        raise QuotientError("nothing to paste")
    target = maps[0].target
    for m in maps[1:]:
        if m.target != target:
            raise QuotientError("pasted maps must share their target")
    if union is None:
        union = disjoint_union([m.source for m in maps])
    else:
        parts = disjoint_union([m.source for m in maps])
        if set(parts.states) != set(union.states) or any(parts.map[x] != union.map[x] for x in parts.states):
            raise QuotientError("sources do not partition the declared union")
    assignment = {}
    for m in maps:
        assignment.update(m.assignment)
    return EquivariantMap.build(union, target, assignment)


def compose(first: EquivariantMap, second: EquivariantMap) -> EquivariantMap:
    """second after first."""
    if first.target != second.source:
        raise QuotientError("maps do not compose: target and source differ")
    pi = {x: second.assignment[y] for x, y in first.assignment.items()}
    return EquivariantMap.build(first.source, second.target, pi)


_PROPERTIES = {"transitive": is_chain_transitive, "recurrent": is_chain_recurrent}


def preservation_test(g_sys: FiniteSystem, f_sys: FiniteSystem, prop: str,
                      budget: Optional[int] = None) -> str:
    """'pass', 'fail' or 'vacuous' for: g has ``prop`` and f is a quotient of g, so f has it."""
    if prop not in _PROPERTIES:
        raise SystemSpecError(f"unknown property {prop!r}; expected transitive or recurrent")
    check = _PROPERTIES[prop]
    if not check(g_sys):
        return "vacuous"
    if find_quotient(g_sys, f_sys, budget) is None:
        return "vacuous"
    return "pass" if check(f_sys) else "fail"
