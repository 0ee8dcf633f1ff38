"""Acceptance criteria, one test each, with the stated tolerance and time limit.

Every test records a pass/fail line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction

import numpy as np

from conftest import CONORMS, SPECS, enclosure_violations, random_measure, random_relation, universe_of
from oracles import chain_minimum, truth_table
from prefcalc.cli.main import run_cli
from prefcalc.desirability import DesirabilityMeasure, crisp_measure
from prefcalc.norm_algebra import PROFILE_NAMES, SHIPPED_PROFILES, ConormFamily, TNormFamily, grid_points, verify_profile
from prefcalc.preference import (
    GeneratingFamily,
    from_desirability,
    regenerate,
    single_generator,
    transitive_envelope,
    transitivity_violations,
    valverde_family,
    verify_axioms,
)
from prefcalc.similarity import from_preference, verify_similarity

TOL = 1e-9
BS = ConormFamily.BOUNDED_SUM


def test_criterion_1_adjunctions(criterion):
    g = grid_points(Fraction(1, 16))
    a, b, c = np.meshgrid(g, g, g, indexing="ij")
    ok = True
    for p in SHIPPED_PROFILES:
        # T(a, c) <= b  iff  c <= R(a, b)
        left = p.tnorm(a, c) <= b + TOL
        right = c <= p.residuum(a, b) + TOL
        ok &= bool(np.array_equal(left, right))
        # S(b, c) >= a  iff  c >= a (-) b
        left = p.conorm(b, c) >= a - TOL
        right = c >= p.conorm_pseudoinverse(a, b) - TOL
        ok &= bool(np.array_equal(left, right))
        ok &= verify_profile(p, Fraction(1, 16)).passed
    criterion(1, "residuation and pseudoinverse adjunctions on the 1/16 grid", ok, 5.0)


def test_criterion_2_preference_axioms(criterion):
    rng = np.random.default_rng(2)
    failures = 0
    for conorm in CONORMS:
        for _ in range(1000):
            u = universe_of(int(rng.integers(2, 7)))
            failures += not verify_axioms(from_desirability(random_measure(rng, u), conorm)).passed
    criterion(2, "from_desirability passes P1-P3 (1000 measures per conorm)", failures == 0, 10.0)


def test_criterion_3_valverde(criterion):
    rng = np.random.default_rng(3)
    worst = 0.0
    for k in range(500):
        conorm = CONORMS[k % len(CONORMS)]
        rho = random_relation(rng, universe_of(int(rng.integers(1, 6))), conorm)
        back = regenerate(valverde_family(rho), conorm)
        worst = max(worst, float(np.abs(back.values - rho.values).max()))
        # sup over third worlds w3 of R[w, w3] (-) R[w2, w3]
        r = rho.values
        ps = rho.profile.conorm_pseudoinverse
        via = ps(r[:, None, :], r[None, :, :]).max(axis=2)
        worst = max(worst, float(np.abs(via - r).max()))
    print(f"valverde round trip: worst deviation {worst:.3g}")
    criterion(3, "Valverde round trip and sup-identity (500 relations)", worst <= TOL, 30.0)


def test_criterion_4_single_generator(criterion):
    rng = np.random.default_rng(4)
    worst = 0.0
    found = True
    for _ in range(200):
        u = universe_of(int(rng.integers(1, 7)))
        rho = from_desirability(random_measure(rng, u), BS)
        res = single_generator(rho)
        found &= res.found
        if res.found:
            worst = max(worst, float(np.abs(from_desirability(res.measure, BS).values - rho.values).max()))
    u = universe_of(3)
    crossing = regenerate(
        GeneratingFamily(u, (DesirabilityMeasure(u, [0.2, 0, 0]), DesirabilityMeasure(u, [0.5, 0.5, 0]))), BS
    )
    none = single_generator(crossing).status == "none"
    print(f"single generator: worst deviation {worst:.3g}, crossing status none={none}")
    criterion(4, "single-generator round trip (200) and crossing relation gives none", found and worst <= TOL and none, 5.0)


def test_criterion_5_enclosure(criterion):
    bad = enclosure_violations(np.random.default_rng(5), 1000)
    criterion(5, "interval enclosure soundness (1000 trials, all connectives and profiles)", not bad, 10.0)


def test_criterion_6_envelope(criterion):
    rng = np.random.default_rng(6)
    ok = True
    for k in range(200):
        conorm = CONORMS[k % len(CONORMS)]
        up = rng.random((5, 5))
        np.fill_diagonal(up, 0.0)
        env = transitive_envelope(up, conorm)
        ok &= not transitivity_violations(env, conorm).any()
        ok &= bool(np.all(np.abs(env - chain_minimum(up, conorm.value, 4)) <= TOL))
        ok &= bool(np.array_equal(transitive_envelope(env, conorm), env))
    criterion(6, "transitive envelope: P3, chain minimum, idempotence (200 inputs)", ok, 10.0)


def test_criterion_7_similarity(criterion):
    rng = np.random.default_rng(7)
    ok = True
    for _ in range(500):
        s = from_preference(random_relation(rng, universe_of(int(rng.integers(1, 7))), BS))
        ok &= s.tnorm_family is TNormFamily.BOUNDED_DIFFERENCE and verify_similarity(s).passed
    for _ in range(50):
        u = universe_of(int(rng.integers(1, 7)))
        p = u.proposition(np.flatnonzero(rng.random(u.size) < 0.5))
        s = from_preference(from_desirability(crisp_measure(p), BS)).values
        ok &= bool(np.array_equal(s, (p.mask[:, None] == p.mask[None, :]).astype(float)))
    criterion(7, "similarity S1-S3 under Lukasiewicz (500) and crisp equivalence blocks", ok, 10.0)


CONNECTIVES = {
    "A & B": lambda a, b: a and b,
    "A | B": lambda a, b: a or b,
    "!A": lambda a, b: not a,
    "A -> B": lambda a, b: (not a) or b,
    "!(A -> B) | (B & !A)": lambda a, b: (a and not b) or (b and not a),
}


def _rank(tmp_path, capsys, doc) -> list[dict]:
    path = tmp_path / "crisp.json"
    path.write_text(json.dumps(doc))
    code = run_cli(["rank", str(path)])
    out = capsys.readouterr().out
    assert code == 0
    return json.loads(out)


def test_criterion_8_boolean_degeneration(criterion, tmp_path, capsys):
    ok = True
    for name, (aggregate, fn) in itertools.product(PROFILE_NAMES, CONNECTIVES.items()):
        doc = {
            "atoms": ["a", "b"],
            "profile": name,
            "constraints": [
                {"name": "A", "kind": "crisp", "formula": "a"},
                {"name": "B", "kind": "crisp", "formula": "b"},
            ],
            "aggregate": aggregate,
        }
        ranking = _rank(tmp_path, capsys, doc)
        expected = truth_table(fn, ["a", "b"])
        by_world = {e["world"]: e["value"] for e in ranking}
        ok &= [by_world[w] for w in range(4)] == [float(x) for x in expected]
        values = [e["value"] for e in ranking]
        # models first, then non-models, each group by world id
        models = [w for w in range(4) if expected[w]]
        ok &= [e["world"] for e in ranking] == models + [w for w in range(4) if not expected[w]]
        ok &= all(v == 1 for v in values[: len(models)]) and all(v == 0 for v in values[len(models) :])
    criterion(8, "all-crisp CLI spec reproduces truth tables and ranks models first", ok, 1.0)


def _table_numbers(text: str) -> list[float]:
    nums = []
    for tok in text.split():
        try:
            nums.append(float(tok))
        except ValueError:
            pass
    return nums


def _json_numbers(obj) -> list[float]:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return []
    if isinstance(obj, (int, float)):
        return [float(obj)]
    if isinstance(obj, dict):
        return [x for v in obj.values() for x in _json_numbers(v)]
    return [x for v in obj for x in _json_numbers(v)]


def _cli(capsys, argv):
    code = run_cli(argv)
    return code, capsys.readouterr().out


def test_criterion_9_cli_determinism(criterion, capsys):
    ok = True
    for path in SPECS:
        spec = json.loads(path.read_text())
        of = next(q["of"] for q in spec["queries"] if q["kind"] == "bounds")
        prefer = next(q for q in spec["queries"] if q["kind"] == "prefer")
        commands = {
            "rank": ["rank"],
            "matrix": ["matrix", "--kind", "preference"],
            "similarity": ["matrix", "--kind", "similarity"],
            "bounds": ["bounds", "--of", of],
            "prefer": ["bounds", "--of", prefer["p"], "--given", prefer["q"]],
        }
        for key, cmd in commands.items():
            outs = {}
            for fmt in ("json", "table"):
                argv = [*cmd, str(path), "--format", fmt]
                first, second = _cli(capsys, argv), _cli(capsys, argv)
                ok &= first == second and first[0] == 0
                outs[fmt] = first[1]
            data = json.loads(outs["json"])
            if key == "rank":
                expect = [x for e in data for x in [e["world"], *_json_numbers(e["value"])]]
                got = [x for row in outs["table"].splitlines()[1:] for x in _table_numbers(row)[1:]]
            elif key in ("matrix", "similarity"):
                # world labels are "w0", "w1", ... so only matrix entries parse as numbers
                expect = [x for k in ("matrix", "lower", "upper") if k in data for x in _json_numbers(data[k])]
                got = _table_numbers(outs["table"])
            else:
                expect = _json_numbers(data)
                got = _table_numbers(outs["table"])
            ok &= got == expect
        code, _ = _cli(capsys, ["check", str(path)])
        ok &= code == 0
    criterion(9, "CLI output byte-identical across runs and formats; check exits 0 on corpus", ok, 10.0)

