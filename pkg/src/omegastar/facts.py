"""Curated, axiom-tagged relations between the catalog maps.

``known_relation(p, q, axiom)`` answers whether q* is a quotient of p*
(equivalently, whether the lifting of q embeds in the lifting of p), or,
with ``relation="subquotient"``, whether a not necessarily surjective
equivariant map p* -> q* exists.

Facts proved without extra hypotheses carry the ZFC tag and answer every
query.  Facts proved under CH or OCA+MA answer only queries under that
hypothesis.  A ZFC query that CH and OCA+MA settle in opposite ways raises
``IndependentError``; an open problem comes back as an unknown verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .permalg import (
    AxiomTag, IndependentError, PermPresentation, PresentationError, Status, Verdict,
    catalog, is_acyclic, is_chain_recurrent_star, is_chain_transitive_star, is_cyclic,
    is_pan_divisible, is_universal_CH, index, parse_name, star_key,
)

__all__ = ["Fact", "FACTS", "OPEN_QUESTIONS", "known_relation", "UnrecordedRelation",
           "IndependentError", "Subject", "subject"]

QUOTIENT = "quotient"
SUBQUOTIENT = "subquotient"


class UnrecordedRelation(LookupError):
    pass


@dataclass(frozen=True)
class Subject:
    """A catalog entry: its canonical name and presentation (None for u)."""

    name: str
    pres: Optional[PermPresentation]

    @property
    def key(self):
        return None if self.pres is None else star_key(self.pres)

    @property
    def is_perm(self) -> bool:
        return self.pres is not None


def subject(name: str, parameter: int | None = None) -> Subject:
    base, n = parse_name(name, parameter)
    if base == "u":
        return Subject("u", None)
    canonical = f"c_{n}" if base == "c" else base
    return Subject(canonical, catalog(base, n))


_S = star_key(catalog("s"))
_S_INV = star_key(catalog("s_inv"))
_Z = star_key(catalog("z"))
_T = star_key(catalog("t"))
_R = star_key(catalog("r"))
_T_JOIN_R = star_key(catalog("t_join_r"))


def _shift(x: Subject) -> bool:
    return x.key in (_S, _S_INV)


def _recurrent(x: Subject) -> bool:
    return x.is_perm and is_chain_recurrent_star(x.pres).holds


def _transitive(x: Subject) -> bool:
    return x.is_perm and is_chain_transitive_star(x.pres).holds


def _cycle_periods(x: Subject) -> set[int]:
    return {f.period for f in x.key.spectrum if hasattr(f, "period")}


def _misses_divisor(p: Subject, q: Subject) -> bool:
    # q = c_n and p has infinitely many cycles none of whose periods n divides
    if not (q.is_perm and p.is_perm and is_cyclic(q.key)):
        return False
    (n,) = _cycle_periods(q) or {None}
    if n is None or len(q.key.spectrum) != 1:
        return False
    if not is_cyclic(p.key) or len(p.key.spectrum) == 0:
        return False
    return all(hasattr(f, "period") and f.period % n for f in p.key.spectrum)


@dataclass(frozen=True)
class Fact:
    key: str
    relation: str
    axiom: AxiomTag
    status: Status
    applies: Callable[[Subject, Subject], bool]
    citation: str


FACTS: tuple[Fact, ...] = (
    # --- ZFC ---------------------------------------------------------------
    Fact("identity", QUOTIENT, AxiomTag.ZFC, Status.HOLDS,
         lambda p, q: p.key is not None and p.key == q.key,
         "identity map (maps differing on finitely many points induce the same map)"),
    Fact("z-onto-shifts", QUOTIENT, AxiomTag.ZFC, Status.HOLDS,
         lambda p, q: p.key == _Z and q.key in (_S, _S_INV),
         "both s* and (s*)^-1 are quotients of z*"),
    Fact("t-covers-acyclic", QUOTIENT, AxiomTag.ZFC, Status.HOLDS,
         lambda p, q: p.key == _T and q.is_perm and is_acyclic(q.pres),
         "acyclic trivial maps are quotients of t* (pasting along Z-orbits)"),
    Fact("r-covers-cyclic", QUOTIENT, AxiomTag.ZFC, Status.HOLDS,
         lambda p, q: p.key == _R and q.is_perm and is_cyclic(q.pres),
         "cyclic maps are quotients of r* via a finite-to-one map"),
    Fact("join-covers-all", QUOTIENT, AxiomTag.ZFC, Status.HOLDS,
         lambda p, q: p.key == _T_JOIN_R and q.is_perm and not is_acyclic(q.pres),
         "non-acyclic trivial maps are quotients of (t∨r)*"),
    Fact("join-covers-acyclic", QUOTIENT, AxiomTag.ZFC, Status.HOLDS,
         lambda p, q: p.key == _T_JOIN_R and q.is_perm and is_acyclic(q.pres),
         "acyclic trivial maps are quotients of t*, hence of (t∨r)* by pasting"),
    Fact("quotient-keeps-recurrence", QUOTIENT, AxiomTag.ZFC, Status.FAILS,
         lambda p, q: _recurrent(p) and q.is_perm and not _recurrent(q),
         "quotients of chain recurrent maps are chain recurrent"),
    Fact("quotient-keeps-transitivity", QUOTIENT, AxiomTag.ZFC, Status.FAILS,
         lambda p, q: _transitive(p) and q.is_perm and not _transitive(q),
         "quotients of chain transitive maps are chain transitive"),
    Fact("shift-subquotient-to-all", SUBQUOTIENT, AxiomTag.ZFC, Status.HOLDS,
         lambda p, q: p.key in (_S, _S_INV, _Z) and q.is_perm,
         "there is a subquotient mapping from s*, (s*)^-1 and z* to every autohomeomorphism"),
    Fact("t-subquotient-to-all", SUBQUOTIENT, AxiomTag.ZFC, Status.HOLDS,
         lambda p, q: p.key == _T and q.is_perm,
         "there is a subquotient mapping from t* to every trivial map"),
    # --- CH ----------------------------------------------------------------
    Fact("universal-classification", QUOTIENT, AxiomTag.CH, Status.HOLDS,
         lambda p, q: p.is_perm and q.is_perm and is_universal_CH(p.pres).holds,
         "infinitely many Z-orbits and pan-divisible: the lifting is universal"),
    Fact("u-universal", QUOTIENT, AxiomTag.CH, Status.HOLDS,
         lambda p, q: p.name == "u",
         "u* is universal for dynamical systems of weight at most c"),
    Fact("shift-onto-inverse", QUOTIENT, AxiomTag.CH, Status.HOLDS,
         lambda p, q: p.key == _S and q.key == _S_INV,
         "(s*)^-1 is a quotient of s*"),
    Fact("shift-universal-transitive", QUOTIENT, AxiomTag.CH, Status.HOLDS,
         lambda p, q: _shift(p) and _transitive(q),
         "s* and (s*)^-1 are universal for chain transitive systems"),
    Fact("pandivisible-universal-recurrent", QUOTIENT, AxiomTag.CH, Status.HOLDS,
         lambda p, q: (p.is_perm and is_cyclic(p.pres) and not is_acyclic(p.pres)
                       and is_pan_divisible(p.pres) and _recurrent(q)),
         "pan-divisible cyclic maps are universal for chain recurrent systems"),
    Fact("cn-divisibility-obstruction", QUOTIENT, AxiomTag.CH, Status.FAILS,
         _misses_divisor,
         "c_n does not embed in the lifting of a map with infinitely many cycles of "
         "period prime to n"),
    # --- OCA+MA ------------------------------------------------------------
    Fact("t-no-cyclic-quotients", QUOTIENT, AxiomTag.OCA_MA, Status.FAILS,
         lambda p, q: p.key == _T and q.is_perm and is_cyclic(q.pres) and not is_acyclic(q.pres),
         "t* has no cyclic maps as quotients"),
    Fact("cyclic-no-shift-quotients", QUOTIENT, AxiomTag.OCA_MA, Status.FAILS,
         lambda p, q: p.is_perm and is_cyclic(p.pres) and q.key in (_S, _S_INV),
         "no cyclic map has s* or (s*)^-1 as a quotient"),
    Fact("shift-inverse-rigid", QUOTIENT, AxiomTag.OCA_MA, Status.FAILS,
         lambda p, q: {p.key, q.key} == {_S, _S_INV},
         "the shift map and its inverse are not quotients of each other"),
    Fact("index-bound", QUOTIENT, AxiomTag.OCA_MA, Status.FAILS,
         lambda p, q: p.is_perm and q.is_perm and index(q.pres) > index(p.pres),
         "a quotient cannot raise the index"),
    Fact("t-embeds-iff-acyclic", QUOTIENT, AxiomTag.OCA_MA, Status.FAILS,
         lambda p, q: p.key == _T and q.is_perm and not is_acyclic(q.pres),
         "an automorphism embeds in the lifting of t iff it is acyclic"),
    Fact("r-embeds-iff-cyclic", QUOTIENT, AxiomTag.OCA_MA, Status.FAILS,
         lambda p, q: p.key == _R and q.is_perm and not is_cyclic(q.pres),
         "an automorphism embeds in the lifting of r iff it is cyclic"),
)

# (relation, p key, q key) -> question text; asked in ZFC, open under every hypothesis
# that does not already decide it.
OPEN_QUESTIONS = {
    (SUBQUOTIENT, "r", "s"): "open question (ZFC): is there a subquotient mapping from r* to s*?",
}


def _matching(relation: str, p: Subject, q: Subject, axiom: AxiomTag) -> list[Fact]:
    out = []
    for fact in FACTS:
        if fact.relation != relation:
            continue
        if fact.axiom is not AxiomTag.ZFC and fact.axiom is not axiom:
            continue
        if fact.applies(p, q):
            out.append(fact)
    if relation == SUBQUOTIENT:
        # every quotient is a subquotient
        out.extend(f for f in _matching(QUOTIENT, p, q, axiom) if f.status is Status.HOLDS)
    return out


def _decide(relation: str, p: Subject, q: Subject, axiom: AxiomTag) -> Optional[Verdict]:
    found = _matching(relation, p, q, axiom)
    if not found:
        return None
    statuses = {f.status for f in found}
    if len(statuses) > 1:
        names = ", ".join(f"{f.key}={f.status}" for f in found)
        raise AssertionError(f"fact table is inconsistent for {p.name}->{q.name} under {axiom}: {names}")
    # weakest hypothesis first, then table order
    best = min(found, key=lambda f: (f.axiom is not AxiomTag.ZFC, FACTS.index(f)))
    return Verdict(best.status, best.axiom, best.citation, best.key)


def known_relation(p_name: str, q_name: str, axiom=AxiomTag.ZFC, relation: str = QUOTIENT) -> Verdict:
    """Look up whether ``q_name``* is a quotient (or subquotient) of ``p_name``*."""
    axiom = AxiomTag(axiom)
    if relation not in (QUOTIENT, SUBQUOTIENT):
        raise ValueError(f"unknown relation {relation!r}")
    try:
        p, q = subject(p_name), subject(q_name)
    except PresentationError as exc:
        raise PresentationError(f"unknown catalog name: {exc}") from None

    verdict = _decide(relation, p, q, axiom)
    if verdict is not None:
        return verdict

    question = None
    for (rel, pn, qn), text in OPEN_QUESTIONS.items():
        if rel == relation and subject(pn).key == p.key and subject(qn).key == q.key:
            question = text
    if question is not None:
        return Verdict(Status.UNKNOWN, axiom, question, "question:" + relation)

    if axiom is AxiomTag.ZFC:
        under_ch = _decide(relation, p, q, AxiomTag.CH)
        under_oca = _decide(relation, p, q, AxiomTag.OCA_MA)
        if under_ch and under_oca and under_ch.status is not under_oca.status:
            raise IndependentError(
                f"{p.name} -> {q.name} ({relation}) {under_ch.status} under CH [{under_ch.key}] "
                f"and {under_oca.status} under OCA+MA [{under_oca.key}]")
    raise UnrecordedRelation(f"no recorded fact for {p.name} -> {q.name} ({relation}) under {axiom.label}")
