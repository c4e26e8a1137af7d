"""Built-in root data and chamber polytopes used by tests and the CLI."""

from __future__ import annotations

from .roots import RootDatum, standard_cartan


def sl2() -> RootDatum:
    """Lambda = Z, alpha = 2, alpha^vee = 1."""
    return RootDatum(1, ((2,), (-2,)), ((1,), (-1,)), (0,))


def pgl2() -> RootDatum:
    """Lambda = Z, alpha = 1, alpha^vee = 2."""
    return RootDatum(1, ((1,), (-1,)), ((2,), (-2,)), (0,))


def sl2_squared() -> RootDatum:
    """SL2 x SL2: roots (2,0), (0,2)."""
    return RootDatum.from_simple(2, [(2, 0), (0, 2)], [(1, 0), (0, 1)])


def so5() -> RootDatum:
    """B2 in epsilon coordinates; Lambda = Z^2 is the root lattice.

    Simple roots e1 - e2 (long) and e2 (short)."""
    return RootDatum.from_simple(2, [(1, -1), (0, 1)], [(1, -1), (0, 2)])


def gl2() -> RootDatum:
    """Non-semisimple example: Lambda = Z^2, alpha = e1 - e2."""
    return RootDatum.from_simple(2, [(1, -1)], [(1, -1)])


def cartan_datum(letter: str, n: int, lattice: str = "root") -> RootDatum:
    return RootDatum.from_cartan(standard_cartan(letter, n), lattice)


def builtin_data() -> dict[str, RootDatum]:
    """Every built-in datum of rank <= 3, keyed by a short name."""
    out = {
        "SL2": sl2(),
        "PGL2": pgl2(),
        "SL2xSL2": sl2_squared(),
        "SO5": so5(),
        "GL2": gl2(),
    }
    for letter, n in [("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3)]:
        for lattice in ("root", "weight"):
            out[f"{letter}{n}_{lattice}"] = cartan_datum(letter, n, lattice)
    return out


BUILTIN_NAMES = tuple(builtin_data())


def get(name: str) -> RootDatum:
    try:
        return builtin_data()[name]
    except KeyError:
        raise KeyError(f"unknown built-in datum {name!r}; choose from {', '.join(BUILTIN_NAMES)}") from None
