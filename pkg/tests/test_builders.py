import math
import random

import pytest

from subword_trees import (
    BuilderPreconditionError,
    Certificate,
    CertificateError,
    Language,
    block_certificate,
    block_length,
    block_recognition_strategy,
    bundled_language,
    decompose_into_runs,
    distinguishing_set_tree,
    homogeneity_dimension,
    materialize_strategy,
    membership_tree,
    slice_size_bound,
    trace_strategy,
    tree_from_certificates,
    validate_membership,
    validate_recognition,
)
from subword_trees.dimensions import INFINITY
from subword_trees.oracle import (
    membership_depth_det,
    recognition_depth_det,
    recognition_depth_nondet,
)

from conftest import iter_antichains


def finite_hom_corpus(corpus):
    return [lang for lang in corpus if homogeneity_dimension(lang) != INFINITY]


def stress_language():
    """Sorted words plus the extra members 10 and 010: homogeneity dimension 1,
    heterogeneity dimension infinite, so the block strategy runs with t=2 on
    slices that keep growing."""
    lang = Language.from_forbidden("stress2", ["100", "101", "110", "0010"])
    assert homogeneity_dimension(lang) == 1
    return lang


# -- run decomposition -----------------------------------------------------------


def test_decompose_examples():
    d = decompose_into_runs(Language.from_forbidden("x", ["11", "00"]), "10")
    assert (d.prefix, d.letter, d.left_run, d.middle, d.right_run, d.suffix) == (
        "",
        1,
        1,
        "",
        1,
        "",
    )
    d = decompose_into_runs(bundled_language("L3"), "000111")
    assert (d.prefix, d.letter, d.left_run, d.middle, d.right_run, d.suffix) == (
        "",
        0,
        3,
        "",
        3,
        "",
    )


def test_decompose_rejects_infinite_dimension():
    with pytest.raises(BuilderPreconditionError):
        decompose_into_runs(bundled_language("L1"), "00")


def test_decompose_rejects_non_members():
    with pytest.raises(BuilderPreconditionError):
        decompose_into_runs(bundled_language("L3"), "10")


def test_decompose_exhaustive(corpus):
    for lang in finite_hom_corpus(corpus):
        bound = 2 * int(homogeneity_dimension(lang))
        for n in range(1, 13):
            for w in lang.iter_slice(n):
                d = decompose_into_runs(lang, w)
                assert d.word == w
                assert len(d.prefix) <= bound
                assert len(d.middle) <= bound
                assert len(d.suffix) <= bound


# -- block strategy ----------------------------------------------------------------


def test_block_length_values(corpus):
    by_name = {lang.name: lang for lang in corpus}
    assert block_length(by_name["L3"]) == 1  # dimension 0 floors to one
    assert block_length(by_name["closure-010"]) == 2
    with pytest.raises(BuilderPreconditionError):
        block_length(by_name["L1"])


def test_strategy_preconditions():
    with pytest.raises(BuilderPreconditionError):
        block_recognition_strategy(bundled_language("L1"), 100)
    with pytest.raises(BuilderPreconditionError):
        block_recognition_strategy(bundled_language("L3"), 9)


def budget(t: int, n: int) -> int:
    return t * math.ceil(math.log2(n / t)) + 7 * t


def run_strategy_over_slice(lang, n, cap=4096):
    strategy = block_recognition_strategy(lang, n)
    t = strategy.t
    worst = 0
    count = 0
    for w in lang.iter_slice(n):
        queried, label = trace_strategy(strategy, w)
        assert label == w, (lang.name, n, w, label)
        assert len(queried) == len(set(queried)), "a position was queried twice"
        worst = max(worst, len(queried))
        count += 1
        if count >= cap:
            break
    assert worst <= budget(t, n), (lang.name, n, worst)
    return worst


def test_strategy_corpus(corpus):
    for lang in finite_hom_corpus(corpus):
        t = block_length(lang)
        for n in {10 * t, 32, 100}:
            if n < 10 * t:
                continue
            run_strategy_over_slice(lang, n)


def test_strategy_case_all_one_letter():
    L3 = bundled_language("L3")
    strategy = block_recognition_strategy(L3, 16)
    queried, label = trace_strategy(strategy, "0" * 16)
    assert label == "0" * 16
    assert len(queried) == 4  # both boundary blocks on each side, nothing else


def test_strategy_stress_language_covers_all_cases():
    lang = stress_language()
    for n in (20, 21, 32, 33, 100):  # odd lengths exercise the remainder block
        run_strategy_over_slice(lang, n)


def test_strategy_exhaustive_small_languages():
    # every antichain over words of length <= 3 with a finite dimension
    rng = random.Random(99)
    checked = 0
    for anti in iter_antichains(3):
        lang = Language("x", anti)
        if homogeneity_dimension(lang) == INFINITY:
            continue
        t = block_length(lang)
        n = 10 * t + rng.choice((0, 1, 3, 7))
        run_strategy_over_slice(lang, n, cap=300)
        checked += 1
    assert checked > 300


def test_strategy_large_n():
    L3 = bundled_language("L3")
    worst = run_strategy_over_slice(L3, 1000, cap=10**9)
    assert worst <= math.ceil(math.log2(1000)) + 7


def test_materialized_strategies_validate(corpus):
    for lang in finite_hom_corpus(corpus):
        t = block_length(lang)
        for n in range(10 * t, 13):
            tree = materialize_strategy(block_recognition_strategy(lang, n))
            assert validate_recognition(tree, lang, n, "det") is None, (lang.name, n)
            assert tree.depth() >= recognition_depth_det(lang, n)


def test_materialized_strategies_validate_exhaustive_small():
    # every unit-block language from the length-3 antichains, including the
    # answer paths no member ever takes (their leaves fall back to a member)
    count = 0
    for anti in iter_antichains(3):
        lang = Language("x", anti)
        if homogeneity_dimension(lang) == INFINITY or block_length(lang) != 1:
            continue
        tree = materialize_strategy(block_recognition_strategy(lang, 10))
        assert validate_recognition(tree, lang, 10, "det") is None, anti
        count += 1
    assert count > 100


def test_materialize_empty_slice():
    L5 = bundled_language("L5")
    tree = materialize_strategy(block_recognition_strategy(L5, 10))
    assert tree.depth() == 0
    assert validate_recognition(tree, L5, 10, "det") is None


# -- bounded certificates -------------------------------------------------------------


def check_certificates(lang, n):
    t = block_length(lang)
    words = lang.slice(n)
    for w in words:
        cert = block_certificate(lang, n, w)
        assert len(cert) <= 7 * t, (lang.name, n, w)
        for u in words:
            if u != w:
                assert cert.separates(u), (lang.name, n, w, u)


def test_certificates_on_corpus(corpus):
    for lang in finite_hom_corpus(corpus):
        t = block_length(lang)
        for n in (10 * t, 10 * t + 5, 32):
            if n < 10 * t:
                continue
            check_certificates(lang, n)


def test_certificates_on_stress_language():
    lang = stress_language()
    for n in (20, 21, 27, 32):
        check_certificates(lang, n)


def test_certificate_pure_word_is_small():
    L3 = bundled_language("L3")
    cert = block_certificate(L3, 20, "0" * 20)
    assert len(cert) <= 4  # boundary blocks only


def test_certificate_preconditions():
    with pytest.raises(BuilderPreconditionError):
        block_certificate(bundled_language("L1"), 20, "0" * 20)
    with pytest.raises(BuilderPreconditionError):
        block_certificate(bundled_language("L3"), 20, "1" + "0" * 19)


# -- certificate union trees -----------------------------------------------------------


def test_tree_from_certificates_nondeterministic():
    L3 = bundled_language("L3")
    n = 3
    certs = {
        w: Certificate.for_word(w, positions)
        for w, positions in {
            "000": (3,),
            "001": (2, 3),
            "011": (1, 2),
            "111": (1,),
        }.items()
    }
    tree = tree_from_certificates(L3, n, certs)
    assert validate_recognition(tree, L3, n, "nondet") is None
    assert tree.depth() == 2
    assert tree.depth() == recognition_depth_nondet(L3, n)


def test_tree_from_certificates_singleton_slice():
    L4 = bundled_language("L4")
    certs = {"00000": Certificate(())}
    tree = tree_from_certificates(L4, 5, certs)
    assert tree.depth() == 0
    assert validate_recognition(tree, L4, 5, "nondet") is None


def test_tree_from_certificates_missing_word():
    L3 = bundled_language("L3")
    with pytest.raises(CertificateError):
        tree_from_certificates(L3, 2, {"00": Certificate(())})


def test_tree_from_certificates_non_separating():
    L3 = bundled_language("L3")
    certs = {w: Certificate(()) for w in L3.slice(2)}
    with pytest.raises(CertificateError) as err:
        tree_from_certificates(L3, 2, certs)
    assert "separate" in str(err.value)


def test_block_certificate_trees_validate(corpus):
    for lang in finite_hom_corpus(corpus):
        t = block_length(lang)
        n = 10 * t
        certs = {w: block_certificate(lang, n, w) for w in lang.iter_slice(n)}
        tree = tree_from_certificates(lang, n, certs)
        assert validate_recognition(tree, lang, n, "nondet") is None
        if n <= 16 and lang.count_slice(n) <= 4096:
            assert tree.depth() >= recognition_depth_nondet(lang, n)


# -- distinguishing-set trees ------------------------------------------------------------


def test_distinguishing_tree_examples():
    from subword_trees import DecisionTree, Leaf

    L4 = bundled_language("L4")
    tree = distinguishing_set_tree(L4, 7)
    assert tree == DecisionTree((Leaf("0000000"),))

    two = Language.from_forbidden("x", ["11", "00"])
    tree = distinguishing_set_tree(two, 2)
    assert tree.depth() == 1
    assert validate_recognition(tree, two, 2, "det") is None

    L3 = bundled_language("L3")
    tree = distinguishing_set_tree(L3, 3)
    # {000,001,011,111}: the pairs (000,001), (001,011), (011,111) differ only
    # at positions 3, 2, 1 respectively, so every fixed distinguishing set
    # needs all three positions (an adaptive tree manages depth 2)
    assert tree.depth() == 3
    assert validate_recognition(tree, L3, 3, "det") is None


def test_distinguishing_tree_empty_slice():
    L5 = bundled_language("L5")
    tree = distinguishing_set_tree(L5, 6)
    assert tree.depth() == 0 and not tree.root_children


def test_distinguishing_trees_validate_and_bound(corpus):
    for lang in corpus:
        bound = slice_size_bound(lang)
        for n in range(1, 13):
            if lang.count_slice(n) > 4096:
                continue
            tree = distinguishing_set_tree(lang, n)
            assert validate_recognition(tree, lang, n, "det") is None, (lang.name, n)
            if n <= 12 and lang.count_slice(n) <= 256:
                assert tree.depth() >= recognition_depth_det(lang, n)
            if bound is not None:
                assert tree.depth() <= bound * bound


# -- membership trees -----------------------------------------------------------------


def test_membership_tree_examples():
    from subword_trees import DecisionTree, Leaf

    assert membership_tree(bundled_language("L2"), 9) == DecisionTree((Leaf("1"),))
    assert membership_tree(bundled_language("L5"), 4) == DecisionTree((Leaf("0"),))
    tree = membership_tree(bundled_language("L1"), 2)
    assert tree.depth() == 2
    assert validate_membership(tree, bundled_language("L1"), 2, "det") is None


def test_membership_trees_validate(corpus):
    for lang in corpus:
        for n in range(1, 11):
            tree = membership_tree(lang, n)
            assert validate_membership(tree, lang, n, "det") is None, (lang.name, n)
            if n <= 10:
                assert tree.depth() >= membership_depth_det(lang, n)
