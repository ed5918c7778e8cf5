import itertools
import math
from fractions import Fraction as F

import pytest

from ttl import tverberg as tv
from ttl.geometry import PointConfiguration, hulls_intersect, sample_generic_config
from ttl.partitions import IndexPartition, enumerate_partitions


def P(*xs):
    return tuple(F(x) for x in xs)


def bruteforce_has_partition(cfg, r, k):
    pts = cfg.points
    for part in enumerate_partitions(len(pts), r):
        blocks = [[pts[i] for i in b] for b in part.blocks]
        if all(hulls_intersect([blocks[i] for i in sub]) for sub in itertools.combinations(range(r), k)):
            return True
    return False


def test_radon_four_points():
    cfg = PointConfiguration.from_points([P(0, 0), P(2, 0), P(0, 2), P(2, 2)])
    res = tv.find_partition(cfg, 2, 2)
    assert res is not None
    assert res.partition.to_json() in ([[1, 4], [2, 3]], [[2, 3], [1, 4]])
    assert res.witnesses[(0, 1)] == P(1, 1)


def test_three_points_have_no_radon_partition():
    cfg = PointConfiguration.from_points([P(0, 0), P(1, 0), P(0, 1)])
    cert = tv.verify_no_partition(cfg, 2, 2)
    assert cert.partitions_checked == 3
    assert cert.replay() == []


def test_partition_exists_raises_with_result():
    cfg = PointConfiguration.from_points([P(0, 0), P(2, 0), P(0, 2), P(1, F(1, 2))])
    with pytest.raises(tv.PartitionExists) as exc:
        tv.verify_no_partition(cfg, 2, 2)
    assert exc.value.result.partition.n == 4


@pytest.mark.parametrize("seed", range(12))
def test_find_partition_agrees_with_brute_force(seed):
    cfg = sample_generic_config(2, 6, seed=seed)
    assert (tv.find_partition(cfg, 3, 2) is not None) == bruteforce_has_partition(cfg, 3, 2)


def test_jobs_do_not_change_result():
    for seed in range(4):
        cfg = sample_generic_config(2, 7, seed=seed)
        a = tv.find_partition(cfg, 3, 3, jobs=1)
        b = tv.find_partition(cfg, 3, 3, jobs=3)
        assert (a is None) == (b is None)
        if a:
            assert a.to_json() == b.to_json()
    w = tv.planar_witness(3)
    assert tv.verify_no_partition(w, 3, 2, jobs=1).to_json() == \
        tv.verify_no_partition(w, 3, 2, jobs=2).to_json()


def test_certificate_round_trip_and_tamper_detection():
    w = tv.planar_witness(3)
    cert = tv.verify_no_partition(w, 3, 2)
    data = cert.to_json()
    again = tv.WitnessCertificate.from_json(data)
    assert again.replay() == []
    data["entries"] = data["entries"][:-1]
    assert tv.WitnessCertificate.from_json(data).replay()
    data = cert.to_json()
    data["entries"][0]["empty_subfamily"] = [0, 0]
    assert tv.WitnessCertificate.from_json(data).replay()


def test_size_cap(monkeypatch):
    monkeypatch.setenv("TTL_MAX_PARTITIONS", "50")
    with pytest.raises(tv.SearchBudgetExceeded):
        tv.find_partition(sample_generic_config(2, 7, seed=0), 3, 2)


def test_bad_parameters():
    cfg = sample_generic_config(2, 4, seed=1)
    for r, k in [(5, 2), (3, 4), (3, 1)]:
        with pytest.raises(ValueError):
            tv.find_partition(cfg, r, k)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_frozen_planar_witnesses(r):
    w = tv.planar_witness(r)
    assert len(w) == 3 * r - 3
    if r < 4:
        assert tv.verify_no_partition(w, r, 2).replay() == []


def test_lift_adds_k_minus_one_points():
    w = tv.planar_witness(3)
    lifted = tv.lift_witness(w, 2)
    assert lifted.dim == 3 and len(lifted) == 7
    assert tv.verify_no_partition(lifted, 3, 2).partitions_checked == 301


def test_reay_chain_dimensions():
    c = tv.reay_chain_witness(3, 3, 2)
    assert c.dim == 3 and len(c) == 6 + 1
    assert tv.verify_no_partition(c, 3, 2).replay() == []


@pytest.mark.parametrize("d,r", [(d, r) for d in range(1, 6) for r in range(2, 6)])
def test_sgp_bound_at_k_equal_r(d, r):
    bound, size = tv.sgp_size_bound(d, r, r)
    assert bound == (r - 1) * (d + 1) + 1 == size


def test_sgp_bound_planar_radon_case():
    assert tv.sgp_size_bound(2, 3, 2) == (F(6), 6)
    assert tv.sgp_size_bound(3, 2, 2)[1] == math.ceil(F(5))


def test_sgp_counting_on_qualifying_partition():
    cfg = sample_generic_config(2, 7, seed=5)
    res = tv.find_partition(cfg, 3, 2)
    assert res is not None
    rep = tv.check_sgp_counting(cfg, res.partition, 2)
    assert rep.qualifies and rep.passed and rep.size >= rep.bound


def test_sgp_counting_refuses_non_sgp():
    cfg = PointConfiguration.from_points([P(0, 0), P(1, 1), P(2, 2), P(0, 1)])
    with pytest.raises(tv.NotStronglyGeneral):
        tv.check_sgp_counting(cfg, IndexPartition.from_rgs((0, 1, 0, 1)), 2)


def test_colored_witness_shape():
    cw = tv.colored_witness(2, 4, 3)
    assert [len(c) for c in cw.classes] == [3, 4, 4]
    assert cw.classes[1].count(P(1, 0)) == 2 and cw.classes[1].count(P(-1, 0)) == 2
    cfg = cw.to_config()
    assert tv.ColoredConfiguration.from_config(cfg) == cw
    with pytest.raises(ValueError):
        tv.colored_witness(2, 4, 2)


def test_rainbow_search_finds_when_possible():
    # (1, 1) sits on the edge opposite the origin, so a rainbow Radon pair exists
    cw = tv.ColoredConfiguration(2, ((P(0, 0), P(1, 1)), (P(2, 0),), (P(0, 2),)))
    sel = tv.find_rainbow_partition(cw, 2, 2)
    assert sel is not None
    pts = cw.points()
    fams = [[pts[i] for i in b] for b in sel.blocks]
    assert hulls_intersect(fams)
    for b in sel.blocks:
        owners = [j for i in b for j, c in enumerate(cw.classes)
                  if sum(len(x) for x in cw.classes[:j]) <= i < sum(len(x) for x in cw.classes[:j + 1])]
        assert len(owners) == len(set(owners))


def test_rainbow_none_when_same_colour_needed():
    cw = tv.ColoredConfiguration(2, ((P(0, 0), P(2, 2)), (P(2, 0),), (P(0, 2),)))
    assert tv.find_rainbow_partition(cw, 2, 2) is None


def test_search_planar_witness_is_seeded():
    a = tv.search_planar_witness(3, seed=7)
    b = tv.search_planar_witness(3, seed=7)
    assert a[0] == b[0] and a[2] == b[2]
    assert a[1].replay() == []
