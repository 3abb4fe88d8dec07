"""Builtin pattern modules, knot complements, and morphisms.

Names accepted by :func:`builtin`:

* ``cfa_longitude`` — the identity pattern (one generator, no operations)
* ``cfa_whitehead`` — the positive Whitehead double pattern
* ``cfa_mazur_hat`` — the Mazur pattern, U = 0 truncation (fragment)
* ``cfa_cable_p1(p)`` — the (p,1)-cable pattern over F2[U], p >= 1
* ``cfa_cable_2_neg1`` — the (2,-1)-cable pattern
* ``cfd_unknot`` — complement of the unknot
* ``cfd_m946`` — complement of the knot with the singleton-plus-two-boxes
  model ("m946")
* ``morphism_m946_diff`` — the difference of the two disk-induced maps for
  that knot

CFK models addressable by :func:`builtin_cfk`: ``unknot``, ``fig8``,
``m946``.
"""

from __future__ import annotations

import re
from typing import List, Union

from .cfk import CfkComplex, build_cfd
from .structures import (
    AGenerator,
    TypeAFamily,
    TypeAOp,
    TypeAStructure,
    TypeDMorphism,
    TypeDStructure,
)
from .torus_algebra import I0, I1, R1, R2, R3, R12, R23, R123


def builtin_cfk(name: str) -> CfkComplex:
    if name == "unknot":
        return CfkComplex.from_boxes(0, 1, name="unknot")
    if name == "fig8":
        return CfkComplex.from_boxes(1, 1, name="fig8")
    if name == "m946":
        return CfkComplex.from_boxes(2, 1, name="m946")
    raise KeyError(f"unknown CFK builtin: {name}")


def cfa_longitude() -> TypeAStructure:
    return TypeAStructure("F2", [AGenerator("l", I0)], name="cfa_longitude")


def cfa_whitehead() -> TypeAStructure:
    gens = [
        AGenerator("c", I1, 1),
        AGenerator("cp", I1, 2),
        AGenerator("b", I0, 2),
        AGenerator("bp", I0, 3),
        AGenerator("a", I1, 2),
        AGenerator("ap", I1, 3),
        AGenerator("d", I0, 3),
    ]
    ops = [
        TypeAOp("cp", (), 0, "c"),
        TypeAOp("b", (R3, R2, R1), 0, "c"),
        TypeAOp("b", (R1,), 0, "a"),
        TypeAOp("bp", (R3, R2, R1), 0, "cp"),
        TypeAOp("bp", (), 0, "b"),
        TypeAOp("bp", (R123,), 0, "a"),
        TypeAOp("bp", (R1,), 0, "ap"),
        TypeAOp("bp", (R12,), 0, "d"),
        TypeAOp("ap", (), 0, "a"),
        TypeAOp("ap", (R23,), 0, "a"),
        TypeAOp("ap", (R2,), 0, "d"),
        TypeAOp("d", (R3,), 0, "a"),
    ]
    return TypeAStructure("F2", gens, ops, name="cfa_whitehead")


def cfa_mazur_hat() -> TypeAStructure:
    gens = [
        AGenerator("x0", I0),
        AGenerator("x1", I1),
        AGenerator("x2", I0),
        AGenerator("x3", I1),
        AGenerator("x4", I0),
        AGenerator("x5", I1, passive=True),
        AGenerator("x6", I1, passive=True),
        AGenerator("y1", I1),
        AGenerator("y2", I0),
        AGenerator("y3", I1),
        AGenerator("y4", I0),
        AGenerator("y5", I1, passive=True),
        AGenerator("y6", I1, passive=True),
    ]
    ops = [
        TypeAOp("x1", (R2,), 0, "x0"),
        TypeAOp("x2", (R1,), 0, "x1"),
        TypeAOp("x2", (R12,), 0, "x0"),
        TypeAOp("x3", (R2,), 0, "y2"),
        TypeAOp("x4", (R1,), 0, "x3"),
        TypeAOp("x4", (R12,), 0, "y2"),
        TypeAOp("y3", (R2, R1), 0, "y1"),
        TypeAOp("y4", (R1,), 0, "y3"),
        TypeAOp("y4", (R12, R1), 0, "y1"),
    ]
    return TypeAStructure("F2", gens, ops, fragment=True, name="cfa_mazur_hat")


def cfa_cable_p1(p: int) -> TypeAStructure:
    """The (p,1)-cable pattern over F2[U]."""
    if p < 1:
        raise ValueError("cable parameter must be >= 1")
    gens = [AGenerator("a", I0)]
    gens += [AGenerator(f"b{j}", I1) for j in range(1, 2 * p - 1)]
    ops: List[TypeAOp] = []
    families: List[TypeAFamily] = []
    # m_{3+i}(a, r3, r23^i, r2) = U^{pi+p} a
    families.append(TypeAFamily("a", (R3,), (R23,), (R2,), p, p, "a"))
    for j in range(p - 1):
        # m_{4+i+j}(a, r3, r23^i, r2, r12^j, r1) = U^{pi+j+1} b_{j+1}
        families.append(TypeAFamily(
            "a", (R3,), (R23,), (R2,) + (R12,) * j + (R1,), p, j + 1, f"b{j + 1}"))
        # m_{2+j}(a, r12^j, r1) = b_{2p-j-2}
        ops.append(TypeAOp("a", (R12,) * j + (R1,), 0, f"b{2 * p - j - 2}"))
    for j in range(1, p):
        # m_1(b_j) = U^{p-j} b_{2p-j-1}
        ops.append(TypeAOp(f"b{j}", (), p - j, f"b{2 * p - j - 1}"))
    for j in range(1, p - 1):
        for i in range(p - j - 1):
            # m_{3+i}(b_j, r2, r12^i, r1) = U^{i+1} b_{j+i+1}
            ops.append(TypeAOp(
                f"b{j}", (R2,) + (R12,) * i + (R1,), i + 1, f"b{j + i + 1}"))
    for j in range(p + 1, 2 * p - 1):
        for i in range(j - p):
            # m_{3+i}(b_j, r2, r12^i, r1) = b_{j-i-1}
            ops.append(TypeAOp(
                f"b{j}", (R2,) + (R12,) * i + (R1,), 0, f"b{j - i - 1}"))
    return TypeAStructure("F2U", gens, ops, families, name=f"cfa_cable_p1({p})")


def cfa_cable_2_neg1() -> TypeAStructure:
    gens = [
        AGenerator("X", I0),
        AGenerator("A1", I1),
        AGenerator("A2", I1),
        AGenerator("B1", I1, passive=True),
        AGenerator("B2", I1),
    ]
    ops = [
        TypeAOp("A2", (R2,), 0, "X"),
        TypeAOp("A2", (R23,), 0, "B2"),
        TypeAOp("A1", (R2, R1), 0, "A2"),
        TypeAOp("A1", (R2, R12), 0, "X"),
        TypeAOp("A1", (R2, R123), 0, "B2"),
        TypeAOp("X", (R3,), 0, "B2"),
    ]
    return TypeAStructure("F2", gens, ops, name="cfa_cable_2_neg1")


def cfd_unknot() -> TypeDStructure:
    return TypeDStructure([("v", I0)], [("v", R12, "v")], name="cfd_unknot")


def cfd_m946() -> TypeDStructure:
    return build_cfd(builtin_cfk("m946"))


def morphism_m946_diff() -> TypeDMorphism:
    entries = []
    for i in (1, 2):
        entries += [
            ("v", I0, f"e{i}"),
            ("v", R3, f"y2_{i}"),
            ("v", R1, f"y3_{i}"),
        ]
    return TypeDMorphism(entries, name="morphism_m946_diff")


_CABLE_RE = re.compile(r"^cfa_cable_p1\((\d+)\)$")

_BUILTINS = {
    "cfa_longitude": cfa_longitude,
    "cfa_whitehead": cfa_whitehead,
    "cfa_mazur_hat": cfa_mazur_hat,
    "cfa_cable_2_neg1": cfa_cable_2_neg1,
    "cfd_unknot": cfd_unknot,
    "cfd_m946": cfd_m946,
    "morphism_m946_diff": morphism_m946_diff,
}


def builtin(name: str) -> Union[TypeAStructure, TypeDStructure, TypeDMorphism]:
    m = _CABLE_RE.match(name)
    if m:
        return cfa_cable_p1(int(m.group(1)))
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise KeyError(f"unknown builtin: {name}") from None


def builtin_names() -> List[str]:
    return sorted(_BUILTINS) + ["cfa_cable_p1(p)"]
