"""One test per acceptance criterion, at the stated tolerance."""
import math
import time

import numpy as np
import pytest

from hypconvex import verify
from hypconvex.cli import main
from hypconvex.delaunay import delaunay_triangulate, hex_lattice, lcr_map
from hypconvex.minkowski import random_points
from hypconvex.pogorelov import phi, psi

crit = pytest.mark.criterion


def rng(name):
    return verify.check_rng(0, name)


@crit(1, "Psi o Phi = id and Phi o Psi = id below 1e-9 on 1e4 pairs in under 2 s")
def test_pogorelov_inverse():
    r = rng("acceptance.1")
    x, y = random_points(r, 10_000, 3, 5.0), random_points(r, 10_000, 3, 5.0)
    t0 = time.perf_counter()
    a, b = phi(x, y)
    x2, y2 = psi(a, b)
    a2, b2 = phi(x2, y2)
    elapsed = time.perf_counter() - t0
    res = max(np.abs(x2 - x).max(), np.abs(y2 - y).max(), np.abs(a2 - a).max(), np.abs(b2 - b).max())
    print(f"residual {res:.3e}, {elapsed:.3f} s")
    assert res < 1e-9
    assert elapsed < 2.0


@crit(2, "length-defect components agree to relative 1e-9; isometric quadruples give < 1e-9")
def test_equal_length_identity():
    rel, iso = verify.length_defect_check(rng("acceptance.2"), 10_000, 1000)
    print(f"relative gap {rel:.3e}, isometric defect {iso:.3e}")
    assert rel < 1e-9 and iso < 1e-9


@crit(3, "geodesic pairs map to equal segments (1e-8); curve speeds agree to 1e-5 at h = 1e-4")
def test_geodesic_to_segment():
    dev, mis = verify.geodesic_segments(rng("acceptance.3"), 1000)
    sp = verify.speed_equality(rng("acceptance.3s"), 100, 1e-4)
    print(f"chord deviation {dev:.3e}, length mismatch {mis:.3e}, speed deviation {sp:.3e}")
    assert dev < 1e-8 and mis < 1e-8 and sp < 1e-5


@crit(4, "A -> B -> A' round trip below 1e-8, pointwise below 1e-9, boost example to 1e-12")
def test_isometry_correspondence():
    rt, pw, ex = verify.isometry_correspondence(rng("acceptance.4"), 1000, 100)
    print(f"round trip {rt:.3e}, pointwise {pw:.3e}, example {ex:.3e}")
    assert rt < 1e-8 and pw < 1e-9 and ex < 1e-12


@crit(5, "|a| + |b| < 2 strictly on 1e5 images")
def test_omega_bound():
    r = rng("acceptance.5")
    a, b = phi(random_points(r, 100_000, 3, 5.0), random_points(r, 100_000, 3, 5.0))
    s = np.linalg.norm(a, axis=1) + np.linalg.norm(b, axis=1)
    print(f"max |a| + |b| = {s.max():.15f}")
    assert np.all(s < 2)


@crit(6, "Delaunay equals the brute-force oracle on 200 sets; zero predicate errors on 1e4 cases")
def test_delaunay_oracle():
    mism = verify.delaunay_oracle(rng("acceptance.6"), 200)
    errs, naive = verify.predicate_exactness(rng("acceptance.6p"), 10_000)
    print(f"mismatches {mism}, predicate errors {errs} (plain float wrong on {naive})")
    assert mism == 0 and errs == 0


@crit(7, "|log lcr - log shear| < 1e-10 on 50 configurations; hex_lattice(3) lcr == 1 exactly")
def test_lcr_shear_duality():
    worst, dual = verify.lcr_shear_duality(rng("acceptance.7"), 50)
    t = delaunay_triangulate(hex_lattice(3, exact=True))
    exact_one = all(v == 1 for v in lcr_map(t).values())
    print(f"max log gap {worst:.3e}, duality mismatches {dual}, exact lcr == 1: {exact_one}")
    assert worst < 1e-10 and dual == 0 and exact_one


@crit(8, "100/100 Mobius pairs ShearEqual; 1e-2 perturbation detected in >= 99/100")
def test_discrete_liouville_probe():
    eq, worst = verify.mobius_pairs(rng("acceptance.8"), 100)
    hits = verify.perturbation_detection(rng("acceptance.8p"), 100)
    print(f"ShearEqual {eq}/100 (max defect {worst:.3e}), detected {hits}/100")
    assert eq == 100 and worst < 1e-8 and hits >= 99


@crit(9, "cube gauge through a 0.2 cap: 2% at 500, 0.5% at 5000; subadditivity; extension properties")
def test_gauge_extension():
    e500, e5000 = verify.cube_recovery(500), verify.cube_recovery(5000)
    sub = verify.subadditivity(rng("acceptance.9"), 10_000)
    below, eq, mono = verify.extension_properties(rng("acceptance.9e"))
    print(f"recovery {e500:.3e} / {e5000:.3e}, subadditivity {sub:.3e}, "
          f"below {below:.1e}, at vertices {eq:.1e}, monotone {mono:.1e}")
    assert e500 < 0.02 and e5000 < 0.005 and sub >= -1e-12
    # "exactly" up to the rounding of one dot product and division
    assert below <= 1e-12 and eq <= 1e-12 and mono <= 1e-12


@crit(10, "<alpha, x> > 0 on 1e3 admissible sets; interior normals pass on 1e3 vertices")
def test_hemisphere_normal_cone():
    inner, vi = verify.hemisphere_check(rng("acceptance.10"), 1000)
    fails = verify.interior_normal_check(rng("acceptance.10n"), 1000)
    print(f"min <alpha, x> {inner:.3e}, variational {vi:.1e}, normal failures {fails}")
    assert inner > 0 and vi >= -1e-10 and fails == 0


@crit(11, "cube corners within 1% (k=8) and 0.2% (k=32); circumference <= 2 pi delta; punctures < 1e-3")
def test_path_metric():
    d = dict(verify.cube_corners())
    e8, e32 = d[8] / math.sqrt(5) - 1, d[32] / math.sqrt(5) - 1
    w = verify.circumference_bound(rng("acceptance.11"), 20)
    p = verify.puncture_check(rng("acceptance.11p"))
    print(f"k=8 {e8:.3e}, k=32 {e32:.3e}, max circumference ratio {w:.6f}, puncture {p:.3e}")
    assert 0 <= e8 < 0.01 and 0 <= e32 < 0.002 and w <= 1 + 1e-9 and p < 1e-3


@crit(12, "same-side double distances planar; square centres at distance 1; slab error ratio about 10")
def test_alexandrov_double():
    c, same, ratio = verify.double_checks(rng("acceptance.12"), 100)
    print(f"centre error {c:.3e}, same-side error {same:.1e}, slab error ratio {ratio:.4f}")
    assert c < 1e-10 and same == 0.0 and 8.0 < ratio < 12.5


@crit("runtime", "verify all exits 0 in under 3 minutes")
def test_verify_all_runtime(capsys):
    t0 = time.perf_counter()
    code = main(["verify", "all"])
    elapsed = time.perf_counter() - t0
    out = capsys.readouterr().out
    with capsys.disabled():
        print(f"\nverify all: exit {code}, {elapsed:.1f} s")
    assert code == 0, out
    assert elapsed < 180
