"""Rule identifiers and the inequality each one encodes.

Anchors are the formulas the engine prints in traces.  Notation: f: X -> Y,
T = TC_{r,s}(f), H = HTC_{r,s}(f), sec(f^s), secat(f^s), and
E = sec^{1×f^s}(e_r^X).
"""

from __future__ import annotations

from typing import Dict

RULES: Dict[str, str] = {
    "R0": "TC_{r,s}(1_X)=TC_r(X)",
    "R1": "HTC_{r,s}(f) ≤ TC_{r,s}(f)",
    "R2": "TC_{r,s}(f)=HTC_{r,s}(f) for a fibration f",
    "R3": "TC_{r,s}(f) ≤ min{TC_{r+1,s}(f), TC_{r+1,s+1}(f)}",
    "R4": (
        "TC_{r,s}(f) ≥ max{sec(f^s), sec^{1×f^s}(e_r^X), cat(X^{r−s−1}×Y^s)} for s<r; "
        "TC_{r,r}(f) ≥ max{sec(f^r), sec^{f^r}(e_r^X), TC_r(Y)}"
    ),
    "R5": "secat(f) ≤ sec(f), with equality for fibrations",
    "R6": (
        "f a fibration: cat(X^{r−s−1}×Y^s) ≤ TC_{r,s}(f) ≤ cat(X^{r−s}×Y^s) for s<r; "
        "cat(Y^{r−1}) ≤ TC_{r,r-1}(f) ≤ min{TC_r(Y), cat(X×Y^{r−1})}; "
        "max{sec(f^r), TC_r(Y)} ≤ TC_{r,r}(f) ≤ cat(Y^r)"
    ),
    "R7": "TC_{r,s}(f×f′) ≤ TC_{r,s}(f)+TC_{r,s}(f′)−1 (normal product)",
    "R8": (
        "f with a section: TC_{r,s}(f∘h) ≤ TC_{r,s}(h); "
        "f with a homotopy section: HTC_{r,s}(g) ≤ HTC_{r,s}(g∘f), TC_{r,s}(g) ≤ TC_{r,s}(g∘f) for s<r; "
        "f with a section: TC_r(Y) ≤ HTC_{r,s}(f) ≤ TC_{r,s}(f) ≤ TC_r(X)"
    ),
    "R9": (
        "TC_{r,r}(g) ≤ TC_{r,r}(g∘f) and HTC_{r,r}(g) ≤ HTC_{r,r}(g∘f), equal when f has a "
        "(homotopy) section; TC_r(Y) ≤ HTC_{r,r}(f) ≤ TC_{r,r}(f)"
    ),
    "R10": "f a fibration: TC_{r,r-1}(f′∘f) ≤ TC_{r,r-1}(f′); TC_{r,r-1}(f) ≤ TC_r(Y)",
    "R11": "f a fibration with a homotopy section: TC_{r,r-1}(f)=TC_r(Y)",
    "R12": "f a fibration over an H-space Y: TC_{r,r-1}(f)=cat(Y^{r−1})=TC_r(Y)",
    "R13": "f a fibration with X contractible: TC_{r,s}(f)=cat(Y^s)=sec(f^s)",
    "R13b": "X contractible: TC_{r,s}(f)=sec(f^s)",
    "R14": "TC_{2s,s}(f) ≤ cat(X^s)+cat(X^s)·sec(f^s)−1 (X path-connected, X^s×Y^s normal)",
    "R15": "nil(Ker((Δ_{r−s}, f^s)*: H*(X^{r−s}×Y^s) → H*(X))) ≤ HTC_{r,s}(f)",
    "R16": (
        "sec(g)·sec^g(f) ≥ sec(g∘f) ≥ max{sec(g), sec^g(f)}; sec(p) ≤ cat(B) for a fibration p, "
        "secat(f) ≤ cat(Y); secat(f)=cat(Y) for null-homotopic f; sec(1_Z×f)=sec(f)"
    ),
    "R17": "nil(Ker(f*: H*(Y) → H*(X))) ≤ secat(f)",
    "R18": "sec(f×f′) ≤ sec(f)+sec(f′)−1 (normal base)",
    "R19": "cat(A×B) ≤ cat(A)+cat(B)−1; cup-length(X)+1 ≤ cat(X)",
    "R20": "TC_r(Y) ≤ TC_{r,r}(f) ≤ TC_{r+1,r}(f) ≤ TC_{r+1}(Y) for a fibration f",
    "R21": "sec^{φ∘g}(f) ≤ sec^g(f) ≤ sec(f); with a section TC_{r,s}(f)=sec^{1×f^s}(e_r^X)",
    "catalog": "seeded fact",
    "user": "user-supplied fact",
}


def anchor(rule: str) -> str:
    return RULES[rule]
