"""Quantity identifiers and the textual query grammar.

Spaces are identified by a *key*: a sorted tuple of ``(base, exponent)`` pairs
naming a product of atomic spaces.  Contractible factors are dropped, so the
empty key is the point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple, Union

SpaceKey = Tuple[Tuple[str, int], ...]

SPACE_KINDS = ("cat", "tc")
MAP_KINDS = ("tcrs", "htcrs", "evalsec", "sec", "secat")
KINDS = SPACE_KINDS + MAP_KINDS


class QuantityError(ValueError):
    pass


def make_key(parts: Iterable[Tuple[str, int]]) -> SpaceKey:
    acc: Dict[str, int] = {}
    for base, e in parts:
        if e < 0:
            raise QuantityError(f"negative exponent for {base}")
        if e:
            acc[base] = acc.get(base, 0) + e
    return tuple(sorted(acc.items()))


def key_power(key: SpaceKey, k: int) -> SpaceKey:
    return make_key((b, e * k) for b, e in key)


def key_product(*keys: SpaceKey) -> SpaceKey:
    return make_key(p for key in keys for p in key)


def key_name(key: SpaceKey) -> str:
    if not key:
        return "pt"
    return " x ".join(b if e == 1 else f"{b}^{e}" for b, e in key)


@dataclass(frozen=True, order=True)
class QuantityId:
    kind: str
    subject: Union[SpaceKey, str]
    r: int = 0
    s: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise QuantityError(f"unknown quantity kind {self.kind!r}")
        if self.kind in ("tc", "tcrs", "htcrs", "evalsec") and self.r < 2:
            raise QuantityError(f"{self.kind}: r must be >= 2, got {self.r}")
        if self.kind in ("tcrs", "htcrs", "evalsec") and not 1 <= self.s <= self.r:
            raise QuantityError(f"{self.kind}: s must lie in [1, {self.r}], got {self.s}")
        if self.kind in ("sec", "secat") and self.s < 1:
            raise QuantityError(f"{self.kind}: s must be >= 1, got {self.s}")

    def __str__(self) -> str:
        subj = key_name(self.subject) if self.kind in SPACE_KINDS else self.subject
        if self.kind == "cat":
            return f"cat({subj})"
        if self.kind == "tc":
            return f"tc({subj}, r={self.r})"
        if self.kind in ("sec", "secat"):
            return f"{self.kind}({subj}, s={self.s})"
        return f"{self.kind}({subj}, r={self.r}, s={self.s})"


def Cat(key: SpaceKey) -> QuantityId:
    return QuantityId("cat", key)


def TCr(key: SpaceKey, r: int) -> QuantityId:
    return QuantityId("tc", key, r)


def TCrs(m: str, r: int, s: int) -> QuantityId:
    return QuantityId("tcrs", m, r, s)


def HTCrs(m: str, r: int, s: int) -> QuantityId:
    return QuantityId("htcrs", m, r, s)


def EvalSec(m: str, r: int, s: int) -> QuantityId:
    return QuantityId("evalsec", m, r, s)


def SecPow(m: str, s: int) -> QuantityId:
    return QuantityId("sec", m, 0, s)


def SecatPow(m: str, s: int) -> QuantityId:
    return QuantityId("secat", m, 0, s)


_CALL = re.compile(r"^\s*([a-z]+)\s*\((.*)\)\s*$", re.S)
_KW = re.compile(r"^\s*([rs])\s*=\s*(-?\d+)\s*$")


def _split_top(body: str) -> List[str]:
    # commas inside parentheses belong to the subject, e.g. proj(S3,S1)
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += (ch == "(") - (ch == ")")
        cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_quantity(text: str, resolve_space, resolve_map=None) -> QuantityId:
    """Parse ``cat(X)``, ``tc(X, r=R)``, ``tcrs(f, r=R, s=S)``, ``htcrs(...)``,
    ``sec(f, s=S)`` (plus ``secat`` and ``evalsec``).

    ``resolve_space`` turns a space expression into a key; ``resolve_map``
    checks a map name and returns its canonical name.
    """
    m = _CALL.match(text)
    if not m:
        raise QuantityError(f"cannot parse quantity {text!r}")
    kind, body = m.group(1), m.group(2)
    if kind not in KINDS:
        raise QuantityError(f"unknown quantity kind {kind!r} in {text!r}")
    parts = _split_top(body)
    subject = parts[0].strip()
    if not subject:
        raise QuantityError(f"missing argument in {text!r}")
    kw: Dict[str, int] = {}
    for p in parts[1:]:
        km = _KW.match(p)
        if not km or km.group(1) in kw:
            raise QuantityError(f"bad keyword argument {p.strip()!r} in {text!r}")
        kw[km.group(1)] = int(km.group(2))
    wanted = {"cat": set(), "tc": {"r"}, "sec": {"s"}, "secat": {"s"}}.get(kind, {"r", "s"})
    if set(kw) != wanted:
        need = ", ".join(f"{k}=" for k in sorted(wanted)) or "no keywords"
        raise QuantityError(f"{kind} takes {need}; got {text!r}")
    if kind in SPACE_KINDS:
        subj: Union[SpaceKey, str] = resolve_space(subject)
    else:
        subj = resolve_map(subject) if resolve_map else subject
    return QuantityId(kind, subj, kw.get("r", 0), kw.get("s", 0))
