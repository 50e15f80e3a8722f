"""Interval fixpoint over the inequality system for TC_{r,s} and its relatives.

Every tracked quantity carries an integer interval ``[lo, hi]`` (``hi=None`` is
unbounded).  Constraints are monotone: a lower-bound constraint reads premise
``lo`` values, an upper-bound constraint reads premise ``hi`` values.  The
worklist loop applies them until nothing moves.  Because every update only
tightens and every constraint is monotone, the fixpoint does not depend on
the order in which constraints fire.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .catalog import Catalog, Fact, MapSpec, known_facts
from .hom import diagonal_evaluation_map, power_map
from .nilpotence import NilResult, cup_length, nil_report
from .quantities import (
    Cat,
    EvalSec,
    HTCrs,
    QuantityId,
    SecatPow,
    SecPow,
    SpaceKey,
    TCr,
    TCrs,
    key_power,
    key_product,
)
from .rules import RULES

NIL_BUDGET = 1 << 15  # largest source dimension for which nil seeds are computed
STEP_CAP = 2_000_000

Value = Optional[int]


class EngineError(Exception):
    pass


class UnknownQuantityError(EngineError, KeyError):
    pass


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    anchor: str
    premises: Tuple[Tuple[str, int, Value], ...]
    side: str
    value: int
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "rule": self.rule,
            "anchor": self.anchor,
            "premises": [{"quantity": q, "lo": lo, "hi": hi} for q, lo, hi in self.premises],
            "produced": {"side": self.side, "value": self.value},
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Interval:
    lo: int = 1
    hi: Value = None
    trace: List[TraceEntry] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.hi is not None and self.lo == self.hi

    def pair(self) -> Tuple[int, Value]:
        return self.lo, self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {'inf' if self.hi is None else self.hi}]"


class ContradictionError(EngineError):
    def __init__(self, quantity: QuantityId, lo: int, hi: int, lo_trace, hi_trace):
        self.quantity = quantity
        self.lo = lo
        self.hi = hi
        self.lo_trace = list(lo_trace)
        self.hi_trace = list(hi_trace)
        super().__init__(f"contradiction on {quantity}: lower bound {lo} exceeds upper bound {hi}")

    def report(self) -> dict:
        return {
            "quantity": str(self.quantity),
            "lo": self.lo,
            "hi": self.hi,
            "lo_trace": [t.to_json() for t in self.lo_trace],
            "hi_trace": [t.to_json() for t in self.hi_trace],
        }


@dataclass(frozen=True)
class Constraint:
    rule: str
    target: QuantityId
    side: str  # "lo" or "hi"
    premises: Tuple[QuantityId, ...]
    fn: Callable[[Sequence[Value]], Value]
    note: str = ""
    anchor: str = ""


def _first(v: Sequence[Value]) -> Value:
    return v[0]


def _sum_minus(v: Sequence[Value]) -> Value:
    # a + b - 1 (and n-ary analogues): the subadditive upper estimate
    if any(x is None for x in v):
        return None
    return sum(v) - (len(v) - 1)


def _product(v: Sequence[Value]) -> Value:
    if any(x is None for x in v):
        return None
    out = 1
    for x in v:
        out *= x
    return out


def _general_estimate(v: Sequence[Value]) -> Value:
    c, s = v
    if c is None or s is None:
        return None
    return c + c * s - 1


def _const(k: int) -> Callable[[Sequence[Value]], Value]:
    return lambda _v: k


@dataclass
class Problem:
    catalog: Catalog = field(default_factory=Catalog)
    maps: List[str] = field(default_factory=list)
    spaces: List[SpaceKey] = field(default_factory=list)
    facts: List[Fact] = field(default_factory=list)
    queries: List[QuantityId] = field(default_factory=list)
    r_max: int = 3


class Engine:
    def __init__(self, problem: Problem, r_max: Optional[int] = None, *, nil_budget: int = NIL_BUDGET):
        self.problem = problem
        self.catalog = problem.catalog
        r_max = problem.r_max if r_max is None else r_max
        for q in problem.queries:
            r_max = max(r_max, q.r, q.s)
        for f in problem.facts:
            r_max = max(r_max, f.quantity.r, f.quantity.s)
        if r_max < 2:
            raise EngineError(f"r_max must be >= 2, got {r_max}")
        self.r_max = r_max
        self.R = r_max + 1  # one step of lookahead
        self.nil_budget = nil_budget
        self.q: Dict[QuantityId, Interval] = {}
        self.constraints: List[Constraint] = []
        self.watchers: Dict[QuantityId, List[int]] = {}
        self.nil_results: Dict[Tuple[str, str, int, int], NilResult] = {}
        self.skipped_nil: List[Tuple[str, int, int, int]] = []
        self._cats: set = set()
        self._tcs: set = set()
        self._done_maps: set = set()
        self.steps = 0
        self.instantiate()

    # -- building ----------------------------------------------------------

    def _quantity(self, q: QuantityId) -> QuantityId:
        if q not in self.q:
            self.q[q] = Interval()
            self.watchers[q] = []
        return q

    def _add(self, c: Constraint):
        for p in (c.target, *c.premises):
            self._quantity(p)
        idx = len(self.constraints)
        self.constraints.append(c)
        for p in set(c.premises):
            self.watchers[p].append(idx)

    def le(self, rule: str, a: QuantityId, b: QuantityId, note: str = ""):
        """a <= b: pushes a.hi down to b.hi and b.lo up to a.lo."""
        self._add(Constraint(rule, a, "hi", (b,), _first, note))
        self._add(Constraint(rule, b, "lo", (a,), _first, note))

    def eq(self, rule: str, a: QuantityId, b: QuantityId, note: str = ""):
        self.le(rule, a, b, note)
        self.le(rule, b, a, note)

    def upper(self, rule: str, target: QuantityId, premises: Sequence[QuantityId], fn, note: str = ""):
        self._add(Constraint(rule, target, "hi", tuple(premises), fn, note))

    def seed(self, rule: str, target: QuantityId, lo: Optional[int], hi: Optional[int],
             note: str = "", anchor: str = ""):
        if lo is not None:
            self._add(Constraint(rule, target, "lo", (), _const(lo), note, anchor))
        if hi is not None:
            self._add(Constraint(rule, target, "hi", (), _const(hi), note, anchor))

    def instantiate(self):
        for key in self.problem.spaces:
            self.cat(key)
            for r in range(2, self.R + 1):
                self.tc(key, r)
        for name in list(self.problem.maps):
            self.add_map(self.catalog.map(name))
        for q in self.problem.queries:
            self._ensure(q)
        for f in self.problem.facts:
            self._ensure(f.quantity)
            self.seed("user", f.quantity, f.lo, f.hi, note=f.anchor)

    def _ensure(self, q: QuantityId):
        if q.kind == "cat":
            self.cat(q.subject)
        elif q.kind == "tc":
            for r in range(2, self.R + 1):
                self.tc(q.subject, r)
        else:
            self.add_map(self.catalog.map(q.subject))

    # -- spaces ------------------------------------------------------------

    def _bases(self, key: SpaceKey):
        return [(self.catalog.base(b), e) for b, e in key]

    def _normal(self, key: SpaceKey) -> bool:
        return all(b.normal for b, _ in self._bases(key))

    def cat(self, key: SpaceKey) -> QuantityId:
        q = Cat(key)
        if key in self._cats:
            return q
        self._cats.add(key)
        self._quantity(q)
        if not key:
            self.seed("catalog", q, 1, 1, anchor="cat(point)=1")
            return q
        bases = self._bases(key)
        # cup-length lower bound; factors without cohomology data contribute 0
        cl = sum(e * cup_length(b.ring) for b, e in bases if b.ring is not None)
        if cl:
            self.seed("R19", q, cl + 1, None, note=f"cup-length {cl}")
        if len(key) == 1 and key[0][1] == 1:
            for fact in known_facts(bases[0][0], (), {key[0][0]: bases[0][0]}):
                self.seed("catalog", fact.quantity, fact.lo, fact.hi, anchor=fact.anchor)
        elif self._normal(key):
            atoms = [self.cat(((b, 1),)) for b, _ in key]
            exps = [e for _, e in key]

            def subadd(v, exps=exps):
                if any(x is None for x in v):
                    return None
                return sum(e * (x - 1) for e, x in zip(exps, v)) + 1

            self.upper("R19", q, atoms, subadd)
        return q

    def tc(self, key: SpaceKey, r: int) -> QuantityId:
        q = TCr(key, r)
        if (key, r) in self._tcs:
            return q
        self._tcs.add((key, r))
        self._quantity(q)
        bases = self._bases(key)
        if len(key) == 1 and key[0][1] == 1 and bases[0][0].sphere_dim is not None:
            for fact in known_facts(bases[0][0], (r,), {key[0][0]: bases[0][0]}):
                if fact.quantity == q:
                    self.seed("catalog", q, fact.lo, fact.hi, anchor=fact.anchor)
        # the identity map is a fibration with a section
        self.le("R6", self.cat(key_power(key, r - 1)), q, "identity map")
        self.le("R6", q, self.cat(key_power(key, r)), "identity map")
        if all(b.h_space for b, _ in bases):
            self.le("R12", q, self.cat(key_power(key, r - 1)), "identity map over an H-space")
        if r + 1 <= self.R:
            self.le("R3", q, self.tc(key, r + 1), "identity map")
        return q

    # -- maps --------------------------------------------------------------

    def add_map(self, m: MapSpec):
        if m.name in self._done_maps:
            return
        self._done_maps.add(m.name)
        for part in (m.composite or ()) + (m.product or ()):
            self.add_map(self.catalog.map(part))
        R = self.R
        f = m.name
        kx, ky = m.domain.key, m.codomain.key
        normal_xy = self._normal(kx) and self._normal(ky)

        for r in range(2, R + 1):
            TX, TY = self.tc(kx, r), self.tc(ky, r)
            for s in range(1, r + 1):
                T, H, E = TCrs(f, r, s), HTCrs(f, r, s), EvalSec(f, r, s)
                S = SecPow(f, s)
                self.le("R1", H, T)
                if m.fibration:
                    self.le("R2", T, H)
                if r + 1 <= R:
                    self.le("R3", T, TCrs(f, r + 1, s))
                    self.le("R3", T, TCrs(f, r + 1, s + 1))
                # lower bounds valid for every map
                self.le("R4", S, T)
                self.le("R4", E, T)
                if s < r:
                    self.le("R4", self.cat(key_product(key_power(kx, r - s - 1), key_power(ky, s))), T)
                else:
                    self.le("R4", TY, T)
                    self.le("R9", TY, H)
                self.upper("R16", T, (S, E), _product, "e = (1×f^s)∘e_r^X")
                self.le("R16", H, self.cat(key_product(key_power(kx, r - s), key_power(ky, s))),
                        "secat ≤ cat of the base")
                self.le("R21", E, TX)
                if m.fibration:
                    if s < r:
                        self.le("R6", T, self.cat(key_product(key_power(kx, r - s), key_power(ky, s))))
                    else:
                        self.le("R6", T, self.cat(key_power(ky, r)))
                    if s == r - 1:
                        self.le("R6", T, TY)
                        self.le("R10", T, TY)
                        if m.homotopy_section:
                            self.le("R11", TY, T)
                        if all(b.h_space for b, _ in self._bases(ky)):
                            self.eq("R12", T, self.cat(key_power(ky, r - 1)))
                            self.eq("R12", T, TY)
                    if s == r and r + 1 <= R:
                        self.le("R20", T, TCrs(f, r + 1, r))
                        self.le("R20", TCrs(f, r + 1, r), self.tc(ky, r + 1))
                    if m.domain.contractible:
                        self.eq("R13", T, self.cat(key_power(ky, s)))
                        self.eq("R13", T, S)
                if m.domain.contractible:
                    self.eq("R13b", T, S)
                if m.identity:
                    self.eq("R0", T, TX)
                if m.section:
                    self.le("R8", T, TX)
                    self.eq("R21", T, E)
                    if s == r:
                        self.eq("R9", TY, T)
                if m.homotopy_section:
                    self.le("R8", TY, H)
                    if s < r:
                        self.le("R8", TY, T)
                    else:
                        self.eq("R9", TY, H)

        for s in range(1, R + 1):
            S, Sa = SecPow(f, s), SecatPow(f, s)
            CY = self.cat(key_power(ky, s))
            self.le("R5", Sa, S)
            if m.fibration:
                self.le("R5", S, Sa)
                self.le("R16", S, CY, "fibration")
            self.le("R16", Sa, CY)
            if m.null_homotopic:
                self.eq("R16", Sa, CY, "null-homotopic map")
            if s + 1 <= R and self._normal(ky):
                self.upper("R18", SecPow(f, s + 1), (S, SecPow(f, 1)), _sum_minus, "f^(s+1) = f^s × f")
            if 2 * s <= R and m.domain.path_connected and normal_xy:
                CX = self.cat(key_power(kx, s))
                self.upper("R14", TCrs(f, 2 * s, s), (CX, S), _general_estimate)

        if m.product is not None:
            self._product_rules(m)
        if m.composite is not None:
            self._composite_rules(m)
        self._nil_seeds(m)

    def _product_rules(self, m: MapSpec):
        left, right = (self.catalog.map(n) for n in m.product)
        normal = self._normal(m.domain.key) and self._normal(m.codomain.key)
        for r in range(2, self.R + 1):
            for s in range(1, r + 1):
                if normal:
                    self.upper("R7", TCrs(m.name, r, s),
                               (TCrs(left.name, r, s), TCrs(right.name, r, s)), _sum_minus)
        for s in range(1, self.R + 1):
            if self._normal(m.codomain.key):
                self.upper("R18", SecPow(m.name, s),
                           (SecPow(left.name, s), SecPow(right.name, s)), _sum_minus)
            for a, b in ((left, right), (right, left)):
                if a.identity:
                    self.eq("R16", SecPow(m.name, s), SecPow(b.name, s), f"{a.name} is an identity")
                    self.eq("R16", SecatPow(m.name, s), SecatPow(b.name, s), f"{a.name} is an identity")

    def _composite_rules(self, m: MapSpec):
        inner, outer = (self.catalog.map(n) for n in m.composite)
        c, g, h = m.name, outer.name, inner.name
        for r in range(2, self.R + 1):
            for s in range(1, r + 1):
                if outer.section:
                    self.le("R8", TCrs(c, r, s), TCrs(h, r, s))
                if outer.homotopy_section:
                    self.le("R8", HTCrs(c, r, s), HTCrs(h, r, s))
                if inner.homotopy_section:
                    self.le("R8", HTCrs(g, r, s), HTCrs(c, r, s))
                    if s < r:
                        self.le("R8", TCrs(g, r, s), TCrs(c, r, s))
                if s == r:
                    self.le("R9", TCrs(g, r, r), TCrs(c, r, r))
                    self.le("R9", HTCrs(g, r, r), HTCrs(c, r, r))
                    if inner.section:
                        self.eq("R9", TCrs(g, r, r), TCrs(c, r, r))
                    if inner.homotopy_section:
                        self.eq("R9", HTCrs(g, r, r), HTCrs(c, r, r))
                if s == r - 1 and inner.fibration:
                    self.le("R10", TCrs(c, r, s), TCrs(g, r, s))
        for s in range(1, self.R + 1):
            self.upper("R16", SecPow(c, s), (SecPow(g, s), SecPow(h, s)), _product,
                       "sec^g(f) ≤ sec(f)")
            self.le("R16", SecPow(g, s), SecPow(c, s))

    def _nil_seeds(self, m: MapSpec):
        pb = m.pullback
        if pb is None:
            return
        for r in range(2, self.r_max + 1):
            for s in range(1, r + 1):
                dim = pb.target.total_dim ** (r - s) * pb.source.total_dim ** s
                if dim > self.nil_budget:
                    self.skipped_nil.append((m.name, r, s, dim))
                    continue
                res = nil_report(diagonal_evaluation_map(pb, r, s))
                self.nil_results[("diag", m.name, r, s)] = res
                self.seed("R15", HTCrs(m.name, r, s), res.nil, None, note=_nil_note(res))
        for s in range(1, self.r_max + 1):
            dim = pb.source.total_dim ** s
            if dim > self.nil_budget:
                self.skipped_nil.append((m.name, 0, s, dim))
                continue
            res = nil_report(power_map(pb, s))
            self.nil_results[("pow", m.name, 0, s)] = res
            self.seed("R17", SecatPow(m.name, s), res.nil, None, note=_nil_note(res))

    # -- propagation -------------------------------------------------------

    def _snapshot(self, qs: Iterable[QuantityId]) -> Tuple[Tuple[str, int, Value], ...]:
        return tuple((str(p), self.q[p].lo, self.q[p].hi) for p in qs)

    def propagate(self, rng: Optional[random.Random] = None) -> "Engine":
        """Run every constraint to a fixpoint.  With ``rng`` the firing order
        is randomized (the result must not change)."""
        pending = list(range(len(self.constraints)))
        if rng is not None:
            rng.shuffle(pending)
        else:
            pending.reverse()  # pop() from the end fires constraints in creation order
        queued = set(pending)
        while pending:
            self.steps += 1
            if self.steps > STEP_CAP:
                raise EngineError("propagation did not converge")
            if rng is not None:
                j = rng.randrange(len(pending))
                pending[j], pending[-1] = pending[-1], pending[j]
            i = pending.pop()
            queued.discard(i)
            c = self.constraints[i]
            vals = [getattr(self.q[p], c.side) for p in c.premises]
            v = c.fn(vals)
            if v is None or not self._tighten(c, v):
                continue
            for j in self.watchers[c.target]:
                if j not in queued:
                    queued.add(j)
                    pending.append(j)
        return self

    def apply_rule(self, rule: str) -> List[Tuple[QuantityId, str, Value, int]]:
        """Fire every constraint of one rule once, without propagating.

        Returns ``(quantity, side, old, new)`` for each endpoint that moved.
        """
        if rule not in RULES:
            raise EngineError(f"unknown rule {rule!r}")
        updates = []
        for c in self.constraints:
            if c.rule != rule:
                continue
            v = c.fn([getattr(self.q[p], c.side) for p in c.premises])
            if v is None:
                continue
            old = getattr(self.q[c.target], c.side)
            if self._tighten(c, v):
                updates.append((c.target, c.side, old, v))
        return updates

    def _tighten(self, c: Constraint, v: int) -> bool:
        iv = self.q[c.target]
        if c.side == "lo":
            if v <= iv.lo:
                return False
        elif iv.hi is not None and v >= iv.hi:
            return False
        entry = TraceEntry(c.rule, c.anchor or RULES[c.rule], self._snapshot(c.premises), c.side, v, c.note)
        if c.side == "lo":
            if iv.hi is not None and v > iv.hi:
                raise ContradictionError(c.target, v, iv.hi, [entry], _side(iv.trace, "hi"))
            iv.lo = v
        else:
            if v < iv.lo:
                raise ContradictionError(c.target, iv.lo, v, _side(iv.trace, "lo"), [entry])
            iv.hi = v
        iv.trace.append(entry)
        return True

    # -- inspection --------------------------------------------------------

    def query(self, q: QuantityId) -> Interval:
        if q not in self.q:
            raise UnknownQuantityError(f"quantity {q} is not instantiated")
        return self.q[q]

    def check_consistency(self) -> dict:
        issues = []
        try:
            self.propagate()
        except ContradictionError as e:
            return {"ok": False, "contradiction": e.report(), "issues": [str(e)]}
        for q, iv in self.q.items():
            if iv.hi is not None and iv.lo > iv.hi:
                issues.append(f"{q}: lo {iv.lo} > hi {iv.hi}")
        for a, b, why in self._alias_pairs():
            if self.q[a].pair() != self.q[b].pair():
                issues.append(f"{a} {self.q[a]} and {b} {self.q[b]} should agree ({why})")
        return {"ok": not issues, "issues": issues}

    def _alias_pairs(self):
        for name in self._done_maps:
            m = self.catalog.map(name)
            ky, kx = m.codomain.key, m.domain.key
            for r in range(2, self.R + 1):
                for s in range(1, r + 1):
                    T = TCrs(name, r, s)
                    if m.fibration:
                        yield T, HTCrs(name, r, s), "R2"
                    if m.identity:
                        yield T, TCr(kx, r), "R0"
                    if m.domain.contractible:
                        yield T, SecPow(name, s), "R13b"
                if m.section:
                    yield TCrs(name, r, r), TCr(ky, r), "R9"
                if m.fibration and m.homotopy_section:
                    yield TCrs(name, r, r - 1), TCr(ky, r), "R11"
                if m.fibration and all(b.h_space for b, _ in self._bases(ky)):
                    yield TCrs(name, r, r - 1), TCr(ky, r), "R12"

    def alias_report(self, name: str) -> dict:
        """Named aliases of TC_{r,r}(f) when they are forced equal, else the
        ``≤`` chain through HTC_{r,r}(f)."""
        m = self.catalog.map(name)
        rows = []
        if m.identity:
            kind = "identity"
            for r in range(2, self.r_max + 1):
                lo, hi = self.q[TCr(m.domain.key, r)].pair()
                rows.append({"r": r, "relation": "=", "lo": lo, "hi": hi,
                             "names": ["TC_{r,s}(f) for every s", "TC_r(X)"]})
        elif m.fibration and m.homotopy_section:
            kind = "equality"
            for r in range(2, self.r_max + 1):
                lo, hi = self.q[TCrs(name, r, r)].pair()
                rows.append({"r": r, "relation": "=", "lo": lo, "hi": hi, "names": [
                    "TC^RS_r(f)", "TC^MW_r(f)", "sec_{f^r}(e_r^Y)", "HTC_{r,r}(f)",
                    "TC_{r,r}(f)", "TC_{r,r-1}(f)", "TC_r(Y)"]})
        else:
            kind = "chain"
            for r in range(2, self.r_max + 1):
                h, t = self.q[HTCrs(name, r, r)], self.q[TCrs(name, r, r)]
                rows.append({"r": r, "relation": "≤", "names": [
                    "sec_{f^r}(e_r^Y)", "HTC_{r,r}(f)", "TC_{r,r}(f)"],
                    "bounds": [{"lo": None, "hi": h.hi}, {"lo": h.lo, "hi": h.hi},
                               {"lo": t.lo, "hi": t.hi}]})
        return {"map": name, "kind": kind, "rows": rows}


def _side(trace: List[TraceEntry], side: str) -> List[TraceEntry]:
    return [t for t in trace if t.side == side]


def _nil_note(res: NilResult) -> str:
    note = f"nil = {res.nil}"
    if res.witness is not None:
        w = str(res.witness)
        if len(w) <= 120:
            note += f"; nonzero product of length {res.witness_length}: {w}"
    return note


def solve(problem: Problem, r_max: Optional[int] = None, rng: Optional[random.Random] = None, **kw) -> Engine:
    return Engine(problem, r_max, **kw).propagate(rng)
