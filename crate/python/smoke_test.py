#!/usr/bin/env python3
"""Smoke test for the qlam_py extension module.

Builds the cdylib if needed, links it under the import name Python expects,
and exercises the main surface: angles, portraits, the atlas, and the
solenoid. Run from anywhere: python3 python/smoke_test.py
"""

import os
import subprocess
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load_module():
    candidates = [
        os.path.join(ROOT, "target", profile, "libqlam_py.so")
        for profile in ("release", "debug")
    ]
    lib = next((p for p in candidates if os.path.exists(p)), None)
    if lib is None:
        subprocess.run(
            ["cargo", "build", "--release", "-p", "qlam-py"], cwd=ROOT, check=True
        )
        lib = candidates[0]
    stage = tempfile.mkdtemp(prefix="qlam_py_")
    os.symlink(lib, os.path.join(stage, "qlam_py.so"))
    sys.path.insert(0, stage)
    import qlam_py

    return qlam_py


def main():
    q = load_module()

    # Angle arithmetic round-trips through the num/den wire format.
    theta = q.Angle("3/7")
    assert str(theta) == "3/7"
    assert theta.double() == q.Angle("6/7")
    assert theta.halve(True).double() == theta
    assert theta.exact_period() == 3
    assert theta.internal_address() == [1, 2, 3]
    prefix, cycle = q.Angle.fraction(1, 6).orbit()
    assert [str(a) for a in prefix] == ["1/6"]
    assert [str(a) for a in cycle] == ["1/3", "2/3"]
    print("angle: ok")

    # The airplane portrait: primitive, three unbounded components per leaf.
    airplane = q.OrbitPortrait.realize(q.Angle("3/7"), q.Angle("4/7"))
    assert airplane.kind() == "primitive"
    assert airplane.ray_period() == 3
    assert airplane.unbounded_count(True) == 3
    rabbit = q.OrbitPortrait.realize(q.Angle("1/7"), q.Angle("2/7"))
    assert rabbit.kind() == "satellite"
    assert rabbit.rotation_number() == (1, 3)
    lo, hi = rabbit.critical_arc()
    assert (str(lo), str(hi)) == ("4/7", "1/7")
    print("portrait: ok")

    # The atlas: census, wake queries, labelled addresses.
    atlas = q.Atlas.build(5)
    assert atlas.per_period_counts() == {1: 1, 2: 1, 3: 3, 4: 6, 5: 15}
    c = atlas.find_by_root_angle(q.Angle("3/7"))
    assert c.address == "1-(1/2)->2->3"
    enclosing = atlas.enclosing_component(q.Angle("7/15"))
    assert enclosing.address == "1-(1/2)->2->3->5"
    conj = atlas.find_by_root_angle(q.Angle("11/31"))
    assert conj.address == "1-(1/2)->2-(1/3)->5"
    assert atlas.irregular_points(c) == c.period + 1
    print("atlas: ok")

    # The solenoid: group law, shift automorphism, adding machine.
    depth = 8
    unit = q.SolenoidPoint.unit(depth)
    x = q.SolenoidPoint.rho(3, 7, depth)
    y = q.SolenoidPoint.periodic(q.Angle("1/3"), depth)
    assert x * x.inverse() == unit
    assert (x * y).shift() == x.shift() * y.shift()
    point = unit
    for _ in range(2**depth):
        point = point.adding_machine()
    assert point == unit
    print("solenoid: ok")

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
