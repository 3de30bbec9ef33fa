from functools import lru_cache

from chevalley import RootSystem, full_table, parse_type

CLASSICAL_COUNTS = {"A": lambda n: n * (n + 1), "B": lambda n: 2 * n * n,
                    "C": lambda n: 2 * n * n, "D": lambda n: 2 * n * (n - 1)}
EXCEPTIONAL_COUNTS = {"E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12}


def all_types(max_rank=8):
    out = [f"A{n}" for n in range(1, max_rank + 1)]
    out += [f"B{n}" for n in range(2, max_rank + 1)]
    out += [f"C{n}" for n in range(2, max_rank + 1)]
    out += [f"D{n}" for n in range(4, max_rank + 1)]
    out += [t for t in ("G2", "F4", "E6", "E7", "E8") if int(t[1]) <= max_rank]
    return out


SMALL_TYPES = ["A1", "A2", "A3", "B2", "C2", "G2", "B3", "C3", "A1xA1", "A1xA2", "A1xB2", "A1xA1xA1"]


@lru_cache(maxsize=None)
def system(name):
    return RootSystem(parse_type(name))


@lru_cache(maxsize=None)
def table(name):
    return full_table(system(name))


def root(sys, *coords):
    k = sys.index(coords)
    assert k is not None, coords
    return k
