"""Deterministic grids of constructed class members."""
from __future__ import annotations

from itertools import islice
from typing import Iterator

from ..constructions import (
    ConstructionError,
    LabeledConstruction,
    StarSpec,
    build_bridge_class,
    build_G1,
    build_G2,
    build_G3,
    build_G4,
    build_H,
    half_threshold,
)
from ..recognizers import class_list


def _partitions(total: int, smallest: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Non-increasing partitions of ``total`` into parts of size at least ``smallest``."""
    if total == 0:
        yield ()
        return
    top = total if largest is None else min(total, largest)
    for first in range(top, smallest - 1, -1):
        for rest in _partitions(total - first, smallest, first):
            yield (first,) + rest


def _anchor_variants(sizes: tuple[int, ...], anchors: int) -> Iterator[list[StarSpec]]:
    yield [StarSpec(s) for s in sizes]
    for alt in range(1, anchors):
        big = [i for i, s in enumerate(sizes) if s >= 3]
        if big:
            specs = [StarSpec(s) for s in sizes]
            specs[big[-1]] = StarSpec(sizes[big[-1]], anchor=alt)
            yield specs


def _g2_members(n: int, t: int, k: int) -> Iterator[LabeledConstruction]:
    for j in range(0, n - t):
        yield build_G2(n - t - j, j, t, k)


def _g3_members(n: int, t: int, k: int) -> Iterator[LabeledConstruction]:
    for used in range(4, n - t + 1):
        for sizes in _partitions(used, 2):
            if len(sizes) < 2:
                continue
            for specs in _anchor_variants(sizes, 2):
                yield build_G3(n - t - used, specs, t, k)


def _g4_members(n: int) -> Iterator[LabeledConstruction]:
    for sizes in _partitions(n - 3, 1):
        for specs in _anchor_variants(sizes, 3):
            yield build_G4(specs)


_BRIDGE_SHAPES = {
    # (bridge end pairs cycled over the bridges, isolated-vertex pairs cycled over isolated vertices)
    "G5": [((0, 1),), ((0, 1), (0, 2))],
    "G6": [((0, 1),)],
    "G7": [((0, 1),)],
    "G8": [((0, 1),)],
}
_ISOLATED_SHAPES = {
    "G5": [((0, 1),), ((0, 2),), ((0, 1), (0, 2))],
    "G6": [((0, 2),), ((0, 2), (2, 3)), ((0, 3), (1, 2))],
    "G7": [((2, 3),)],
    "G8": [((0, 1),)],
}
_BRIDGE_A = {"G5": 3, "G6": 4, "G7": 4, "G8": 5}


def _bridge_members(label: str, n: int, reading: str) -> Iterator[LabeledConstruction]:
    s = _BRIDGE_A[label]
    free = n - s
    seen = set()
    for used in range(0, free + 1):
        for sizes in _partitions(used, 2):
            for ends in _BRIDGE_SHAPES[label]:
                for iso in _ISOLATED_SHAPES[label]:
                    n_iso = free - used
                    bridges = [StarSpec(sz, anchor=0, ends=ends[i % len(ends)]) for i, sz in enumerate(sizes)]
                    isolated = [iso[i % len(iso)] for i in range(n_iso)]
                    key = (tuple(bridges), tuple(isolated))
                    if key in seen:
                        continue
                    seen.add(key)
                    try:
                        yield build_bridge_class(label, bridges, isolated, reading)
                    except ConstructionError:
                        continue


def class_members(label: str, n: int, k: int, limit: int | None = None,
                  reading: str = "every") -> list[LabeledConstruction]:
    """Maximal ``n``-vertex members of one class from ``class_list(k)``.

    Shapes that a class cannot realise on ``n`` vertices are skipped.
    """
    if label == "H(n,7,3)":
        gen: Iterator[LabeledConstruction] = iter([build_H(n, 7, 3)]) if n >= 7 else iter(())
    else:
        base_k = 6 if label.endswith("(n,6)") else k
        core = label[:2]
        t = half_threshold(base_k)

        def make() -> Iterator[LabeledConstruction]:
            try:
                if core == "G1":
                    if n >= base_k:
                        yield build_G1(n, base_k)
                elif core == "G2":
                    yield from _g2_members(n, t, base_k)
                elif core == "G3":
                    yield from _g3_members(n, t, base_k)
                elif core == "G4":
                    yield from _g4_members(n)
                else:
                    yield from _bridge_members(core, n, reading)
            except ConstructionError:
                return

        gen = make()
    return list(islice(gen, limit))


def construction_grid(k: int, n_values, limit_per_class: int | None = None,
                      reading: str = "every") -> Iterator[tuple[str, LabeledConstruction]]:
    """Every class of ``class_list(k)`` crossed with ``n_values``."""
    for n in n_values:
        for label in class_list(k):
            for member in class_members(label, n, k, limit_per_class, reading):
                yield label, member
