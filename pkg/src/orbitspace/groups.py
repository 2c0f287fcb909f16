"""Built-in Fuchsian groups."""

import math

from .hyperbolic import GroupSpec


def modular_torus() -> GroupSpec:
    """The once-punctured torus group, commutator subgroup of PSL(2, Z)."""
    return GroupSpec.from_matrices([(1, 1, 1, 2), (1, -1, -1, 2)], name="modular-torus")


def octagon_genus2() -> GroupSpec:
    """Side pairings of the regular hyperbolic octagon with angles pi/4.

    In the disk model the k-th generator is [[x, y e^{ik pi/4}], [y e^{-ik pi/4}, x]]
    with x = 1 + sqrt 2 and y = sqrt(2 + 2 sqrt 2); the four generators satisfy
    the single relation a B c D A b C d = 1.
    """
    x = 1 + math.sqrt(2)
    y = math.sqrt(2 + 2 * math.sqrt(2))
    mats = []
    for k in range(4):
        re = y * math.cos(k * math.pi / 4)
        im = y * math.sin(k * math.pi / 4)
        mats.append((x + re, -im, -im, x - re))
    return GroupSpec.from_matrices(mats, name="octagon-genus2")


BUILTIN = {
    "modular-torus": modular_torus,
    "octagon-genus2": octagon_genus2,
}

OCTAGON_RELATOR = "aBcDAbCd"


def builtin_group(name: str) -> GroupSpec:
    try:
        return BUILTIN[name]()
    except KeyError:
        raise KeyError(f"unknown group {name!r}; built-in groups: {', '.join(sorted(BUILTIN))}") from None
