import json

import numpy as np
import pytest

from absorbing import (
    InvalidSpec,
    enumerate_ideals,
    is_local,
    is_reduced,
    jacobson_radical,
    make_ideal,
    maximal_ideals,
    minimal_primes_over,
    nilradical,
    power,
    product,
)
from absorbing.errors import CapExceeded
from absorbing.theorems import (
    CHECKS,
    CHECKS_BY_ID,
    COUNTEREXAMPLE,
    ERROR,
    MIN_PRIMES_ID,
    VACUOUS,
    VERIFIED,
    CorpusEntry,
    RingContext,
    SuiteConfig,
    check_min_primes_construction,
    default_corpus,
    format_corpus,
    load_corpus,
    parse_corpus,
    recheck_witness,
    run_check,
    run_suite,
    select_checks,
    strip_timing,
    suite_exit_code,
)

from conftest import corpus_specs, naive_units, naive_violation, ring

SMALL = corpus_specs(max_order=16)


def verdict(check_id, spec):
    return run_check(CHECKS_BY_ID[check_id], RingContext(ring(spec)))


@pytest.fixture(scope="module")
def suite():
    return run_suite(default_corpus(), SuiteConfig(timing=False))


def naive_flag(r, name, members):
    return naive_violation(r, name, frozenset(members)) is None


# ------------------------------------------------------------ examples


class TestCheckExamples:
    def test_colon_instance_on_z12(self):
        # (I : 2) for I = {0,4,8} is the even residues, which is prime
        v = verdict("colon-weakly-prime", "Z12")
        assert v.parts["colon"] > 0

    def test_colon_fails_on_z12_zero_ideal(self):
        v = verdict("colon-weakly-prime", "Z12")
        assert v.outcome == COUNTEREXAMPLE
        w = v.witness
        assert w["ideal"]["members"] == [0]
        assert w["c"]["elements"] == [2]
        assert w["colon"]["members"] == [0, 6]
        assert w["violation"]["elements"] == [2, 3]

    def test_colon_fails_for_nonzero_ideal(self):
        # (I : 3) = I for I = {0,4,8}, which is not weakly prime
        r = ring("Z12")
        from absorbing import colon, is_weakly_prime, is_weakly_one_absorbing_prime

        i = make_ideal(r, [0, 4, 8])
        assert is_weakly_one_absorbing_prime(i)
        assert colon(i, 3) == i and not is_weakly_prime(i)

    def test_colon_vacuous_on_fields(self):
        assert verdict("colon-weakly-prime", "Z7").outcome == VACUOUS

    def test_triple_zero_annihilation(self):
        assert verdict("triple-zero-annihilation", "Z8 (+) {0,4}").outcome == VERIFIED
        assert verdict("triple-zero-annihilation", "Z6").note.startswith("out of scope")
        # local, but every weakly 1-absorbing prime is 1-absorbing prime
        assert verdict("triple-zero-annihilation", "Z4").outcome == VACUOUS
        # {0} in Z8 is weakly but not 1-absorbing prime (2*2*2 = 0, 4 != 0)
        assert verdict("triple-zero-annihilation", "Z8").outcome == VERIFIED

    def test_cube_zero(self):
        v = verdict("cube-zero", "Z8 (+) {0,4}")
        assert v.outcome == VERIFIED
        assert verdict("cube-zero", "Z4").outcome == VACUOUS
        assert verdict("cube-zero", "Z5").outcome == VACUOUS

    def test_radical_collapse(self):
        assert verdict("radical-collapse", "Z8 (+) {0,4}").outcome == VERIFIED
        assert verdict("radical-collapse", "Z11").outcome == VACUOUS

    def test_nilpotent_annihilation(self):
        v = verdict("nilpotent-annihilation", "Z8 (+) {0,4}")
        assert v.outcome == VERIFIED and v.parts["IJK products"] > 0
        assert verdict("nilpotent-annihilation", "Z13").outcome == VACUOUS

    def test_nilradical_prime(self):
        assert verdict("nilradical-prime-equivalence", "Z4").outcome == VERIFIED
        v = verdict("nilradical-prime-equivalence", "Z2 x Z2")
        assert v.outcome == VACUOUS and v.instances_checked == 0

    def test_not_one_abs_iff_nil_is_vacuous(self):
        for spec in ("Z8", "Z16", "Z8 (+) {0,4}", "Z27 / (9)"):
            assert verdict("not-one-absorbing-iff-nil", spec).outcome == VACUOUS

    def test_reduced_radical_prime(self):
        v = verdict("reduced-radical-prime", "Z6")
        assert v.outcome == VERIFIED
        assert verdict("reduced-radical-prime", "Z4").note.startswith("out of scope")
        assert verdict("reduced-radical-prime", "Z2 x Z2").outcome == VERIFIED

    def test_nonlocal_equivalence(self):
        # ann(6) = (2) is maximal in Z12, so {0,6} is excluded; only {0} qualifies
        v = verdict("nonlocal-weakly-prime-equivalence", "Z12")
        assert v.outcome == VERIFIED and v.instances_checked == 1
        assert verdict("nonlocal-weakly-prime-equivalence", "Z6").outcome == VERIFIED
        assert verdict("nonlocal-weakly-prime-equivalence", "Z9").note.startswith("out of scope")

    def test_product_first_factor_statement_fails(self):
        v = verdict("product-whole-factor", "Z8 x Z2")
        assert v.outcome == COUNTEREXAMPLE
        w = v.witness
        assert w["factor_ideal"]["members"] == [0, 4]
        assert w["statements"] == {"(1)": False, "(2)": False, "(3)": True}
        assert w["violation"]["labels"] == [[1, 0], [2, 0], [2, 0]]

    def test_product_checks_need_products(self):
        assert verdict("product-whole-factor", "Z12").note == "out of scope (decomposable-2)"
        assert verdict("product-three-factors", "Z2 x Z3").note == "out of scope (decomposable-3)"

    def test_product_equivalence_on_fields(self):
        assert verdict("product-two-factors", "Z2 x Z3").outcome == VERIFIED
        assert verdict("product-three-factors", "Z2 x Z2 x Z2").outcome == VERIFIED

    def test_three_factor_characterization_fails_on_z2_cubed(self):
        v = verdict("product-three-factors-characterization", "Z2 x Z2 x Z2")
        assert v.outcome == COUNTEREXAMPLE
        assert v.witness["ideal"]["labels"] == [[0, 0, 0], [0, 0, 1]]
        assert v.witness["statements"]["(3)"] is True
        assert v.witness["statements"]["(4)"] is False

    def test_three_factor_first_factor_golden(self):
        # Z2 x 0 x 0 is neither prime nor weakly 1-absorbing prime
        r = ring("Z2 x Z2 x Z2")
        i = make_ideal(r, [r.index_of((0, 0, 0)), r.index_of((1, 0, 0))])
        assert not naive_flag(r, "prime", i.members)
        assert not naive_flag(r, "weakly_one_absorbing_prime", i.members)

    def test_converse_failure_is_found(self):
        v = verdict("product-weakly-not-one-absorbing", "Z4 (+) {0,2} x Z2")
        assert v.outcome == VERIFIED
        assert v.parts == {"(1)=>(2)": 0, "(2)=>(1) fails": 3}
        fail = v.findings["converse_failure"]
        r = ring("Z4 (+) {0,2} x Z2")
        assert not naive_flag(r, "weakly_one_absorbing_prime", fail["ideal"]["members"])

    def test_ideal_triples_converse_fails_on_z16(self):
        v = verdict("ideal-triples", "Z16")
        assert v.outcome == COUNTEREXAMPLE
        assert v.witness["part"] == "(2)=>(1)"
        assert v.witness["ideal"]["members"] == [0, 8]
        assert v.witness["violation"]["elements"] == [2, 2, 2]

    def test_ideal_triples_on_prime_only_rings(self):
        # a field has no nonzero product of proper ideals
        assert verdict("ideal-triples", "Z7").outcome == VACUOUS
        assert verdict("ideal-triples", "Z2 x Z3").outcome == VERIFIED

    def test_principal_jacobson(self):
        for spec in ("Z8", "Z27", "Z16"):
            assert verdict("principal-jacobson", spec).outcome == VERIFIED
        # J(Z6) = 0, so only abc = 0 occurs
        assert verdict("principal-jacobson", "Z6").instances_checked == 1

    def test_local_all_ideals(self):
        assert verdict("local-all-ideals", "Z8").outcome == VERIFIED
        v = verdict("local-all-ideals", "Z16")
        assert v.outcome == VERIFIED
        assert v.findings["failing_ideal"]["ideal"]["members"] == [0, 8]
        v = verdict("local-all-ideals", "Z4")
        assert v.parts["M^2=0 => all 1-absorbing"] == 1

    def test_global_classification(self):
        v = verdict("global-classification", "Z8")
        assert v.findings["shape"] == "local, M^3=0"
        v = verdict("global-classification", "Z2 x Z3 x Z5")
        assert v.parts["shape"] == 0 and v.parts["converse-three-fields"] == 1
        assert verdict("global-classification", "Z6").findings["shape"] == "local with M^2=0 x field"
        v = verdict("global-classification", "Z4 x Z3")
        assert v.parts["converse-field-times-local"] == 1 and v.outcome == VERIFIED

    def test_zpk_analog(self):
        assert verdict("zpk-analog", "Z32").outcome == VERIFIED
        assert verdict("zpk-analog", "Z12").note.startswith("out of scope")


class TestMinPrimesConstruction:
    def test_n2(self):
        v = check_min_primes_construction(2)
        assert v.check_id == MIN_PRIMES_ID
        assert v.findings["minimal_primes"] == 2
        assert v.outcome == COUNTEREXAMPLE
        assert v.witness["part"] == "I weakly 1-absorbing prime"
        labels = v.witness["violation"]["labels"]
        assert labels == [[[0, 1], 4], [[1, 2], 0], [[1, 0], 0]]
        r = ring("idealization(Z8 x Z8, proj1, {0,4})")
        a, b, c = (r.index_of(((x, y), m)) for (x, y), m in labels)
        assert r.label_of(r.mul[r.mul[a, b], c]) == ((0, 0), 4)
        assert recheck_witness(r, v.witness)

    def test_minimal_primes_are_the_lifted_coordinate_primes(self):
        r = ring("idealization(Z8 x Z8, proj1, {0,4})")
        i = make_ideal(r, [0, 1])
        mins = minimal_primes_over(i)
        assert len(mins) == 2
        for p in mins:
            # every prime contains the module part and has index 2 in R
            assert i <= p and len(p) == r.order // 2

    def test_rejects_n1(self):
        with pytest.raises(InvalidSpec):
            check_min_primes_construction(1)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            check_min_primes_construction(3, cap=256)


# ------------------------------------------------------------ suite-level


def test_every_counterexample_rechecks(suite):
    cx = [r for r in suite["results"] if r["outcome"] == COUNTEREXAMPLE]
    assert cx
    for r in cx:
        assert r["witness"].get("facts"), r["check_id"]
        spec = r["ring"]
        target = ring(spec, 1024) if "proj1" in spec else ring(spec)
        assert recheck_witness(target, r["witness"]), (spec, r["check_id"])


def test_counterexample_facts_agree_with_naive_loops(suite):
    seen = 0
    for r in suite["results"]:
        if r["outcome"] != COUNTEREXAMPLE or "proj1" in r["ring"]:
            continue
        rr = ring(r["ring"])
        if rr.order > 32:
            continue
        for f in r["witness"]["facts"]:
            target = rr if "factor" not in f else rr.factors[f["factor"]]
            assert naive_flag(target, f["predicate"], f["ideal"]) == f["value"]
            seen += 1
    assert seen > 100


def test_element_witnesses_are_violations(suite):
    """Element tuples in witnesses reproduce the stated failure by direct arithmetic."""
    for r in suite["results"]:
        w = r.get("witness") or {}
        if r["check_id"] == "colon-weakly-prime" and w and "proj1" not in r["ring"]:
            rr = ring(r["ring"])
            a, b = w["violation"]["elements"]
            (c,) = w["c"]["elements"]
            I = set(w["ideal"]["members"])
            Q = set(w["colon"]["members"])
            assert Q == {x for x in range(rr.order) if rr.mul[x, c] in I}
            ab = rr.mul[a, b]
            assert ab != rr.zero and ab in Q and a not in Q and b not in Q


def test_known_failures_only(suite):
    failing = {r["check_id"] for r in suite["results"] if r["outcome"] == COUNTEREXAMPLE}
    assert failing == {
        "colon-weakly-prime",
        "product-whole-factor",
        "product-two-factors",
        "product-three-factors-characterization",
        "ideal-triples",
        MIN_PRIMES_ID,
    }
    assert suite["summary"]["errors"] == 0
    for r in suite["results"]:
        if r["check_id"] == "ideal-triples" and r["outcome"] == COUNTEREXAMPLE:
            assert r["witness"]["part"] == "(2)=>(1)"


def test_vacuity_report(suite):
    vac = suite["vacuity"]
    assert set(vac["per_check"]) == {c.id for c in CHECKS} | {MIN_PRIMES_ID}
    assert "not-one-absorbing-iff-nil" in vac["provably_vacuous"]
    assert vac["unexplained_never_verified"] == ["product-three-factors-characterization", MIN_PRIMES_ID]
    for cid, row in vac["per_check"].items():
        assert row["instances_checked"] == sum(
            r["instances_checked"] for r in suite["results"] if r["check_id"] == cid
        )


def test_scope_soundness(suite):
    for r in suite["results"]:
        if r["check_id"] == MIN_PRIMES_ID:
            continue
        rr = ring(r["ring"], 1024) if "proj1" in r["ring"] else ring(r["ring"])
        scope = CHECKS_BY_ID[r["check_id"]].scope
        local = len(maximal_ideals(rr)) == 1
        expected = {
            "all": True,
            "local": local,
            "non-local": not local,
            "reduced": nilradical(rr).is_zero,
            "decomposable-2": len(rr.factors) == 2,
            "decomposable-3": len(rr.factors) == 3,
            "zmod-prime-power": r["ring"].startswith("Z")
            and r["ring"][1:].isdigit()
            and len({p for p in range(2, rr.order + 1) if rr.order % p == 0 and all(p % q for q in range(2, p))}) == 1,
        }[scope]
        out_of_scope = r.get("note", "").startswith("out of scope")
        assert out_of_scope == (not expected), (r["ring"], r["check_id"])
        if out_of_scope:
            assert r["instances_checked"] == 0 and r["outcome"] == VACUOUS


# --------------------------------------------------- independent counting


def _weakly_naive(r):
    lat = enumerate_ideals(r)
    return lat, [naive_flag(r, "weakly_one_absorbing_prime", i.members) for i in lat.ideals]


@pytest.mark.parametrize("spec", SMALL)
def test_instance_counts(spec):
    r = ring(spec)
    ctx = RingContext(r)
    lat, weak = _weakly_naive(r)
    one = [naive_flag(r, "one_absorbing_prime", i.members) for i in lat.ideals]
    ideals = lat.ideals
    proper = [i for i in ideals if i.proper]
    nonunits = [x for x in range(r.order) if x not in naive_units(r)]

    def count(cid):
        return run_check(CHECKS_BY_ID[cid], ctx).instances_checked

    # colon: weakly I, nonunit c not in I, (I : c) proper
    n = 0
    for i, w in zip(ideals, weak):
        if w:
            for c in nonunits:
                if c not in i and any(r.mul[x, c] not in i for x in range(r.order)):
                    n += 1
    assert count("colon-weakly-prime") == n

    local = len(maximal_ideals(r)) == 1
    wn1 = sum(w and not o for w, o in zip(weak, one))
    assert count("cube-zero") == (wn1 if local else 0)

    j = jacobson_radical(r)
    assert count("principal-jacobson") == len(j) ** 3

    if local:
        (m,) = maximal_ideals(r)
        assert count("local-all-ideals") == 1 + power(m, 2).is_zero

    if is_reduced(r):
        assert count("reduced-radical-prime") == sum(w for i, w in zip(ideals, weak) if not i.is_zero)

    nil = nilradical(r)
    holds = naive_flag(r, "prime", nil.members) + naive_flag(r, "primary", nil.members)
    assert count("nilradical-prime-equivalence") == holds * sum(nil <= i for i in proper)

    # ideal triples: weakly I over proper triples with 0 != I1 I2 I3 <= I
    fin12 = 0
    for i, w in zip(ideals, weak):
        if not w or not i.proper:
            continue
        for a in proper:
            for b in proper:
                ab = product(a, b)
                for c in proper:
                    abc = product(ab, c)
                    fin12 += (not abc.is_zero) and abc <= i
    v = run_check(CHECKS_BY_ID["ideal-triples"], ctx)
    assert v.parts["(1)=>(2)"] == fin12
    assert v.parts["(2)=>(1)"] == sum(not w for i, w in zip(ideals, weak) if i.proper)

    if len(r.factors) == 3:
        sizes = [len(enumerate_ideals(f)) for f in r.factors]
        assert count("product-three-factors") == int(np.prod(sizes)) - 2


@pytest.mark.parametrize("spec", ["Z8 (+) {0,4}", "Z16", "Z4 (+) {0,2}"])
def test_triple_zero_annihilation_count(spec):
    r = ring(spec)
    lat, weak = _weakly_naive(r)
    nonunits = [x for x in range(r.order) if x not in naive_units(r)]
    n = 0
    for i, w in zip(lat.ideals, weak):
        if w and not naive_flag(r, "one_absorbing_prime", i.members):
            for a in nonunits:
                for b in nonunits:
                    ab = r.mul[a, b]
                    for c in nonunits:
                        n += r.mul[ab, c] == r.zero and ab not in i and c not in i
    v = verdict("triple-zero-annihilation", spec)
    assert v.parts["abI=acI=bcI=0"] == n


# ------------------------------------------------------------ nonfree matrix


@pytest.mark.parametrize("spec", ["Z16", "Z12", "Z8 (+) {0,4}", "Z4 x Z4", "Z2 x Z2 x Z4"])
def test_nonfree_matrix_matches_witness_search(spec):
    from absorbing.predicates import free_triple_zero_witness

    ctx = RingContext(ring(spec))
    p = ctx.proper_idx
    for k in p:
        nf = ctx.nonfree(k)
        I = ctx.ideals[k]
        for a in p:
            for b in p:
                for c in p:
                    w = free_triple_zero_witness(I, ctx.ideals[a], ctx.ideals[b], ctx.ideals[c])
                    assert bool(nf[a, b, c]) == (w is not None)


# ------------------------------------------------------------ runner


def test_empty_corpus():
    rep = run_suite([], SuiteConfig(timing=False))
    assert rep["results"] == [] and rep["build_errors"] == []
    assert suite_exit_code(rep) == 0


def test_corrupted_entry_does_not_abort():
    entries = [CorpusEntry("Z6"), CorpusEntry("Z8 (+) {0,3}"), CorpusEntry("Z12 x"), CorpusEntry("Z7")]
    rep = run_suite(entries, SuiteConfig(timing=False, check="cube-zero"))
    assert [e["spec"] for e in rep["build_errors"]] == ["Z8 (+) {0,3}", "Z12 x"]
    assert "InvalidSpec" in rep["build_errors"][0]["error"]
    assert "ParseError" in rep["build_errors"][1]["error"]
    assert [r["ring"] for r in rep["results"]] == ["Z6", "Z7"]
    assert suite_exit_code(rep) == 2


def test_cap_exceeded_is_a_build_error():
    rep = run_suite([CorpusEntry("Z9 x Z9 x Z9")], SuiteConfig(timing=False, check="cube-zero"))
    assert "CapExceeded" in rep["build_errors"][0]["error"]


def test_results_are_sorted_and_deterministic():
    entries = [CorpusEntry(s) for s in ("Z9", "Z2 x Z4", "Z12", "Z8 (+) {0,4}", "Z2 x Z2 x Z2")]
    a = run_suite(entries, SuiteConfig())
    b = run_suite(list(reversed(entries)), SuiteConfig(parallel=2))
    assert "timestamp" in a
    keys = [(r["ring"], r["check_id"]) for r in a["results"]]
    assert keys == sorted(keys)
    sa, sb = strip_timing(a), strip_timing(b)
    assert json.dumps(sa["results"], sort_keys=True) == json.dumps(sb["results"], sort_keys=True)
    assert sa["summary"] == sb["summary"] and sa["vacuity"] == sb["vacuity"]
    c = run_suite(entries, SuiteConfig(timing=False))
    d = run_suite(entries, SuiteConfig(timing=False))
    assert json.dumps(c, sort_keys=True) == json.dumps(d, sort_keys=True)


def test_check_filter():
    assert [c.id for c in select_checks("product-three")] == ["product-three-factors", "product-three-factors-characterization"]
    assert len(select_checks(None)) == len(CHECKS) == 19
    rep = run_suite([CorpusEntry("Z8")], SuiteConfig(timing=False, check="local-all-ideals"))
    assert [r["check_id"] for r in rep["results"]] == ["local-all-ideals"]
    rep = run_suite([CorpusEntry("Z8")], SuiteConfig(timing=False, check="min-primes"))
    assert [r["check_id"] for r in rep["results"]] == [MIN_PRIMES_ID]


def test_error_outcome(monkeypatch):
    from absorbing.errors import DomainError
    from absorbing.theorems import checks as C

    def boom(ctx, t):
        raise DomainError("broken")

    chk = C.TheoremCheck("x", "x", "all", boom)
    v = run_check(chk, RingContext(ring("Z4")))
    assert v.outcome == ERROR and "DomainError" in v.note


def test_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(cap=1)
    with pytest.raises(ValueError):
        SuiteConfig(parallel=0)


def test_check_ids_unique():
    ids = [c.id for c in CHECKS]
    assert len(ids) == len(set(ids))


# ------------------------------------------------------------ corpus


def test_default_corpus_contents():
    specs = [e.spec for e in default_corpus()]
    assert specs[:3] == ["Z2", "Z3", "Z4"] and "Z64" in specs
    assert "Z9 x Z9 x Z9" not in specs and "Z5 x Z5 x Z9" in specs
    slow = [e.spec for e in default_corpus() if e.slow]
    assert slow == ["idealization(Z8 x Z8, proj1, {0,4})"]
    for e in default_corpus():
        if not e.slow:
            assert ring(e.spec).order <= 256


def test_corpus_round_trip(tmp_path):
    entries = default_corpus()
    text = format_corpus(entries)
    parsed = parse_corpus(text)
    assert [(e.spec, e.slow) for e in parsed] == [(e.spec, e.slow) for e in entries]
    path = tmp_path / "corpus.txt"
    path.write_text("# comment\n\nZ6\nZ8 x Z8 slow  # big\n")
    assert load_corpus(path) == [CorpusEntry("Z6"), CorpusEntry("Z8 x Z8", slow=True)]
    with pytest.raises(InvalidSpec):
        load_corpus(tmp_path / "missing.txt")
    with pytest.raises(InvalidSpec):
        parse_corpus("slow\n")


def test_verdict_json_shape():
    v = verdict("cube-zero", "Z8 (+) {0,4}")
    js = v.to_json()
    assert set(js) == {"check_id", "ring", "outcome", "instances_checked", "parts", "millis"}
    assert "millis" not in v.to_json(timing=False)
    assert is_local(ring("Z8 (+) {0,4}"))[0]
