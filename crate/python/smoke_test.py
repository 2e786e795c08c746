"""Smoke test for the paritycx extension module.

Build and install first:  pip install --no-build-isolation -e crates/py
"""

import json

import paritycx
from paritycx import Category, Chain, Complex, Cosimplicial


def main():
    s = Complex.simplex(2)
    assert s.is_valid() and s.order_is_linear()
    assert len(s) == 7 and s.dim == 2

    # the big triangle cell and its 1-target
    a = s.atom("012")
    assert a.minus() == {0: ["0"], 1: ["02"], 2: ["012"]}
    assert a.plus() == {0: ["2"], 1: ["01", "12"], 2: ["012"]}
    assert a.target(1) == s.atom("01").compose(s.atom("12"), 0)
    cells = s.cells()
    assert len(cells) == 8 and all(c.is_cell() for c in cells)

    assert Complex.simplex(1).right_cone().isomorphic(s)
    assert Complex.from_json(s.to_json()).to_json() == s.to_json()
    assert paritycx.check_product_iso(Complex.glob(1), Complex.simplex(1))

    square = Complex.interval().product(Complex.interval())
    assert len(square) == 9 and square.chain().is_complex()

    # descent along the nerve of the walking arrow into Z/2
    arrow = Complex.simplex(1).snapshot()
    z2 = Category.from_json(json.dumps({
        "dim": 1,
        "cells": [
            {"id": "*", "dim": 0, "src": {}, "tgt": {}},
            {"id": "g", "dim": 1, "src": {"0": "*"}, "tgt": {"0": "*"}},
        ],
        "comp": [{"k": 0, "a": "g", "b": "g", "r": "*"}],
    }))
    e = Cosimplicial.hom(arrow, z2, top=2)
    assert e.violations() == []
    explicit = e.descent(1)
    general = e.descent(1, method="general")
    assert explicit.shape() == general.shape()
    # two functors from the arrow to Z/2, two transformations between any
    # ordered pair, and identities are not listed
    assert explicit.shape() == [2, 6]

    assert arrow.nerve_matches_classical(3)

    ch = Chain.from_json(json.dumps({
        "top": 1,
        "p": 2,
        "basis": {"0": ["a", "b"], "1": ["e"]},
        "d": {"1": [[1], [1]]},
    }))
    assert [ch.homology(k) for k in range(2)] == [1, 0]
    theta = ch.theta()
    assert theta.pi0() == 2

    try:
        s.cells(cap=3)
    except paritycx.CapacityError:
        pass
    else:
        raise AssertionError("capacity not enforced")

    print("ok")


if __name__ == "__main__":
    main()
