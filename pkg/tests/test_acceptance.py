"""Acceptance criteria 1-11, one PASS/FAIL line each.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
import contextlib
import functools
import inspect
import io
import itertools
import json
import os
import sys
import tempfile
import time
from math import comb
from pathlib import Path

import pytest

from ttl import complexes as cx
from ttl import convex_thrackle as ct
from ttl import tverberg as tv
from ttl.cli import main
from ttl.cliques import min_clique_cover_bruteforce
from ttl.geometry import hulls_intersect, sample_generic_config, strong_general_position
from ttl.partitions import stirling2
from ttl.projective import projective_plane

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # running as a script from elsewhere
    ACCEPTANCE_LINES = []


def report(number, title, budget=None):
    """Decorator: time the check, emit one PASS/FAIL line, re-raise failures."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            ok, detail = False, ""
            try:
                detail = fn(*args, **kwargs) or ""
                elapsed = time.perf_counter() - start
                if budget is not None and elapsed > budget:
                    detail = f"over budget: {elapsed:.1f}s > {budget}s"
                    raise AssertionError(detail)
                ok = True
            except BaseException as exc:
                detail = detail or f"{type(exc).__name__}: {exc}"
                raise
            finally:
                elapsed = time.perf_counter() - start
                line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} ({elapsed:.1f}s) {detail}"
                ACCEPTANCE_LINES.append(line.rstrip())
                print(line.rstrip())
        return run
    return wrap


def cli(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = main([str(a) for a in argv])
    return code, buf.getvalue()


def write_config(directory, name, cfg):
    path = Path(directory) / name
    path.write_text(json.dumps(cfg.to_json()))
    return path


@pytest.fixture
def workdir():
    with tempfile.TemporaryDirectory() as d:
        yield Path(d)


@report(1, "Radon/Tverberg consistency, T(2,2,2) = 4", budget=10)
def test_criterion_01_radon(workdir):
    for seed in range(200):
        path = write_config(workdir, "four.json", sample_generic_config(2, 4, seed=seed))
        code, out = cli("search", "partition", "--r", 2, "--k", 2, path)
        assert code == 0 and json.loads(out)["found"], f"4 points, seed {seed}"
    for seed in range(200):
        path = write_config(workdir, "three.json", sample_generic_config(2, 3, seed=seed))
        code, out = cli("verify", "tverberg-witness", "--r", 2, "--k", 2, path)
        assert code == 0 and json.loads(out)["certificate"]["partitions_checked"] == 3, f"3 points, seed {seed}"
    return "200 + 200 configurations"


@report(2, "T(2,3,2) = 7", budget=120)
def test_criterion_02_planar_r3(workdir):
    code, out = cli("search", "planar-witness", "--r", 3, "--k", 2, "--seed", 7)
    rep = json.loads(out)
    assert code == 0 and len(rep["config"]["points"]) == 6
    cert = rep["certificate"]
    assert cert["partitions_checked"] == stirling2(6, 3) == 90
    path = workdir / "cert.json"
    path.write_text(json.dumps(cert))
    code, out = cli("verify", "certificate", path)
    assert code == 0 and json.loads(out)["problems"] == []
    for seed in range(500):
        cfg = sample_generic_config(2, 7, seed=10_000 + seed)
        assert tv.find_partition(cfg, 3, 2) is not None, f"7 points, seed {seed}"
    return "6-point witness replays over 90 partitions; 500/500 seven-point sets partition"


@report(3, "lifting T(3,3,2) >= 7 + 1", budget=60)
def test_criterion_03_lift(workdir):
    base = write_config(workdir, "base.json", tv.planar_witness(3))
    lifted = workdir / "lifted.json"
    code, _ = cli("generate", "lift", "--k", 2, "--input", base, "-o", lifted)
    assert code == 0
    assert len(json.loads(lifted.read_text())["points"]) == 7
    code, out = cli("verify", "tverberg-witness", "--r", 3, "--k", 2, lifted)
    cert = json.loads(out)["certificate"]
    assert code == 0 and cert["partitions_checked"] == stirling2(7, 3) == 301
    assert tv.WitnessCertificate.from_json(cert).replay() == []
    return "301 partitions certified"


@report(4, "strong-general-position bound", budget=60)
def test_criterion_04_sgp():
    for d in range(1, 6):
        for r in range(2, 6):
            bound, size = tv.sgp_size_bound(d, r, r)
            assert bound == size == (r - 1) * (d + 1) + 1, (d, r)
    bound, size = tv.sgp_size_bound(2, 3, 2)
    assert size == 6
    checked = 0
    for seed in range(100):
        n = 3 + seed % 3
        cfg = sample_generic_config(2, n, seed=20_000 + seed)
        assert strong_general_position(cfg), f"seed {seed} not SGP"
        cert = tv.verify_no_partition(cfg, 3, 2)
        assert cert.replay() == []
        checked += 1
    return f"identity on 20 (d, r); {checked} SGP sets below {bound} have no partition"


@report(5, "colored witness has no rainbow partition", budget=300)
def test_criterion_05_colored():
    cases = 0
    for d in range(0, 3):
        for r in range(2, 5):
            for k in range(-(-r // 2) + 1, r + 1):
                cw = tv.colored_witness(d, r, k)
                assert tv.find_rainbow_partition(cw, r, k) is None, (d, r, k)
                cases += 1
    return f"{cases} (d, r, k) cases exhaustive"


@report(6, "projective-plane thrackles are tight")
def test_criterion_06_projective():
    for q, n in ((2, 7), (3, 13)):
        inst = ct.plane_thrackle_from_incidence(projective_plane(q))
        assert {w for w, _ in inst.W} == set(inst.V)
        assert ct.check_transversal(inst)
        assert inst.m == inst.n == n
    return "7 = 7, 13 = 13"


@report(7, "vertex selection is surjective")
def test_criterion_07_selection():
    for inst in (ct.heptagram_thrackle(), ct.quad_apex_thrackle()):
        sel = ct.vertex_selection(inst)
        assert sel.is_surjective(inst.m) and inst.m <= inst.n
    for seed in range(100):
        inst = ct.random_segment_thrackle(seed)
        ct.check_selection_hypotheses(inst)
        sel = ct.vertex_selection(inst)
        assert sel.is_surjective(inst.m) and inst.m <= inst.n, seed
    return "heptagram, quadrilateral+apex, 100 random"


@report(8, "counterexamples reproduce")
def test_criterion_08_counterexamples():
    sg = ct.seven_gon_example()
    assert sg.m == 21 and sg.n == 7
    pts = [sg.body_points(i) for i in range(sg.m)]
    assert all(hulls_intersect([pts[i], pts[j]]) for i, j in itertools.combinations(range(21), 2))
    assert not ct.check_transversal(sg)
    oc = ct.octahedron_counterexample()
    assert oc.dim == 3 and oc.m == 7 and oc.n == 6
    assert ct.check_transversal(oc)
    return "seven-gon 21 > 7; octahedron 7 > 6"


@report(9, "minimum proper clique cover of K_m is m", budget=120)
def test_criterion_09_clique_cover(request):
    ms = [3, 4, 5]
    if request is not None and request.config.getoption("--runslow"):
        ms.append(6)
    for m in ms:
        assert min_clique_cover_bruteforce(m) == m, m
    return "m = " + ", ".join(map(str, ms))


@report(10, "high-dimensional thrackle bound dm <= 2n", budget=60)
def test_criterion_10_complexes():
    for d in range(2, 6):
        K, f = cx.simplex_boundary(d)
        assert cx.verify_linear_thrackle(K, f)
        c = cx.facet_ridge_inequality(K)
        assert c.d * c.m == 2 * c.n == d * (d + 1) and c.n == comb(d + 1, 2)
    K, f = cx.pyramid_example()
    assert K.m == 10 and len(cx.ridges(K)) == 10
    rep = cx.verify_linear_thrackle(K, f)
    assert rep.ball_failures and not rep.embedding_failures and not rep.stability_failures
    K, f = cx.star_cone_example()
    assert cx.verify_linear_thrackle(K, f)
    c = cx.facet_ridge_inequality(K)
    assert (K.m, len(K.vertices), c.n, c.d * c.m, 2 * c.n) == (10, 9, 20, 30, 40)
    K, f = cx.book_example()
    trace = cx.reduction(K, f)
    assert len(trace.steps) == 1 and cx.replay_reduction(K, f, trace)
    return "simplex boundaries tight; pyramid ball-only; star cone 30 <= 40; book replays"


DETERMINISM = [
    ["generate", "colored-witness", "--d", 2, "--r", 4, "--k", 3],
    ["generate", "projective-thrackle", "--q", 3],
    ["generate", "octahedron"], ["generate", "seven-gon"], ["generate", "heptagram"],
    ["generate", "quad-apex"], ["generate", "random-thrackle", "--seed", 17],
    ["generate", "simplex-boundary", "--d", 4], ["generate", "pyramid"],
    ["generate", "star-cone"], ["generate", "book"], ["generate", "planar-witness", "--r", 4],
    ["generate", "reay-chain", "--d", 3, "--r", 3, "--k", 2],
    ["generate", "generic-config", "--d", 2, "--n", 7, "--seed", 3],
    ["search", "planar-witness", "--r", 3, "--k", 2, "--seed", 7],
    ["search", "second-apex", "--seed", 0],
]


@report(11, "determinism of generate/search output")
def test_criterion_11_determinism(workdir):
    checked = 0
    for argv in DETERMINISM:
        blobs = []
        for rep in range(2):
            out = workdir / f"out{rep}.json"
            code, stdout = cli(*argv, "-o", out)
            assert code == 0, argv
            blobs.append(out.read_bytes() + stdout.replace(str(out), "").encode())
        assert blobs[0] == blobs[1], argv
        checked += 1
    seven = write_config(workdir, "seven.json", sample_generic_config(2, 7, seed=3))
    colored = write_config(workdir, "colored.json", tv.colored_witness(1, 3, 3).to_config())
    lift_in = write_config(workdir, "pw.json", tv.planar_witness(3))
    for argv in (["search", "partition", "--r", 3, "--k", 3, seven],
                 ["search", "rainbow", "--r", 3, "--k", 3, colored],
                 ["generate", "lift", "--k", 2, "--input", lift_in]):
        outs = [cli(*argv, *extra)[1] for extra in ([], [], ["--jobs", 2])
                if argv[0] == "search" or not extra]
        assert len(set(outs)) == 1, argv
        checked += 1
    svg = [workdir / "a.svg", workdir / "b.svg"]
    hp = workdir / "hp.json"
    cli("generate", "heptagram", "-o", hp)
    for s in svg:
        assert cli("render", hp, s)[0] == 0
    assert svg[0].read_bytes() == svg[1].read_bytes()
    return f"{checked + 1} commands byte-identical across re-runs"


if __name__ == "__main__":
    class _Config:
        @staticmethod
        def getoption(_):
            return "--runslow" in sys.argv

    class _Request:
        config = _Config

    failures = 0
    with tempfile.TemporaryDirectory() as d:
        available = {"workdir": Path(d), "request": _Request()}
        for name, fn in sorted(globals().items()):
            if not name.startswith("test_criterion_"):
                continue
            try:
                fn(**{k: available[k] for k in inspect.signature(fn).parameters})
            except Exception:
                failures += 1
    sys.exit(1 if failures else 0)
