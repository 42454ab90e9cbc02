import pytest
from hypothesis import given
from hypothesis import strategies as st

from hnn_forge.bs12 import A_GEN, B_GEN, IDENTITY, HElement, h_inv, h_is_identity
from hnn_forge.hnn import GWord, cyclic_permutations, equal_in_G, g_inv, g_mul, t_length
from hnn_forge.relator import build_relator, default_spec, exponent_sequence
from hnn_forge.small_cancellation import (
    collins_verify,
    common_prefix_blocks,
    h_ball,
    h_conjugate,
    inverse_block_seq,
    conjugate_prefix_check,
    max_common_run,
    piece_bound,
)

blocks = st.lists(st.tuples(st.integers(-4, 4).filter(bool), st.sampled_from("ab")), min_size=1, max_size=7).map(tuple)


@pytest.fixture(scope="module")
def r():
    return build_relator(default_spec())


@pytest.fixture(scope="module")
def seq():
    return exponent_sequence(default_spec())


def blocks_of_cyclic_word(w: GWord):
    """Oracle: read (signed block length, preceding letter) off a cyclic word."""
    rot = cyclic_permutations(w)[0]
    out = []
    letter = None
    run = 0
    for h, e in zip(rot.hs, rot.es + (0,)):
        if not h_is_identity(h):
            if run:
                out.append((run, letter))
            letter = "a" if h.k == 0 else "b"
            run = 0
        run += e
    if run:
        out.append((run, letter))
    return tuple(out)


def naive_runs(s1, s2, skip_trivial):
    """Oracle: compare unrolled cyclic strings position by position."""
    n1, n2 = len(s1), len(s2)
    L = min(n1, n2)
    best = 0
    for i in range(n1):
        for j in range(n2):
            if skip_trivial and i == j:
                continue
            a = [s1[(i + k) % n1] for k in range(L)]
            b = [s2[(j + k) % n2] for k in range(L)]
            k = next((k for k in range(L) if a[k] != b[k]), L)
            best = max(best, k)
    return best


class TestBlockSequences:
    def test_matches_relator_word(self, r, seq):
        assert blocks_of_cyclic_word(r) == seq

    def test_inverse_matches_inverse_word(self, r, seq):
        inv = inverse_block_seq(seq)
        assert blocks_of_cyclic_word(g_inv(r)) == inv
        positive = sorted(m for m, _ in inv if m > 0)
        assert positive == sorted(default_spec().u[1::2])

    def test_first_blocks_by_hand(self, seq):
        inv = inverse_block_seq(seq)
        assert inv[:3] == ((120, "b"), (-130, "a"), (118, "b"))

    def test_single_block(self):
        assert inverse_block_seq(((5, "b"),)) == ((-5, "b"),)

    @given(blocks)
    def test_involution_and_magnitudes(self, s):
        assert inverse_block_seq(inverse_block_seq(s)) == s
        assert sorted(abs(m) for m, _ in inverse_block_seq(s)) == sorted(abs(m) for m, _ in s)


class TestMaxCommonRun:
    def test_default_against_itself(self, seq):
        assert max_common_run(seq, seq) == 0 == naive_runs(seq, seq, True)

    def test_default_against_inverse(self, seq):
        inv = inverse_block_seq(seq)
        assert max_common_run(seq, inv) == 0 == naive_runs(seq, inv, False)

    def test_trivial_alignment_excluded(self):
        s = ((5, "b"), (-3, "a"))
        assert max_common_run(s, s) == 0

    def test_periodic_sequence(self):
        s = ((2, "b"), (-2, "a")) * 3
        assert max_common_run(s, s) == 6

    @given(blocks, blocks)
    def test_against_oracle(self, s1, s2):
        assert max_common_run(s1, s2) == naive_runs(s1, s2, s1 == s2)

    @given(blocks, blocks)
    def test_symmetric(self, s1, s2):
        assert max_common_run(s1, s2) == max_common_run(s2, s1)

    @given(blocks, blocks, st.integers(0, 6))
    def test_rotation_invariant(self, s1, s2, k):
        rot = lambda s: s[k % len(s):] + s[: k % len(s)]
        assert max_common_run(rot(s1), rot(s2)) == max_common_run(s1, s2)


class TestPieceBound:
    def test_default(self):
        rep = piece_bound(default_spec())
        assert rep.max_piece_tlen == 368 == 118 + 130 + 120
        assert rep.total_tlen == 2221
        assert rep.max_run_blocks == 0
        assert rep.sixth_certified

    def test_invalid(self):
        assert not piece_bound([3, 2]).sixth_certified


class TestConjugation:
    def test_identity_conjugator(self, r):
        assert h_conjugate(r, IDENTITY) == r

    def test_preserves_t_length(self, r):
        c = h_conjugate(r, A_GEN)
        assert t_length(c) == 2221
        assert c.hs[0] == h_inv(A_GEN) * B_GEN

    def test_inverse_conjugation(self, r):
        h = HElement.of(3, -1)
        assert equal_in_G(h_conjugate(h_conjugate(r, h), h_inv(h)), r)


class TestCollins:
    def test_trivial(self, r):
        assert collins_verify(r, r, IDENTITY)

    def test_rotation(self, r):
        assert collins_verify(r, cyclic_permutations(r)[1], IDENTITY)

    def test_conjugated_rotation(self, r):
        rot = cyclic_permutations(r)[7]
        w2 = g_mul(g_mul(GWord.from_h(h_inv(A_GEN)), rot), GWord.from_h(A_GEN))
        assert collins_verify(r, w2, A_GEN)
        assert not collins_verify(r, w2, B_GEN)

    def test_inverse_is_not_a_conjugate(self, r):
        assert not collins_verify(r, g_inv(r), IDENTITY)


class TestCommonPrefix:
    def test_self(self, r):
        assert common_prefix_blocks(r, r) == 20

    def test_inverse(self, r):
        assert common_prefix_blocks(r, g_inv(r)) == 0

    def test_rotations(self, r):
        rots = cyclic_permutations(r)
        for j in (1, 50, 101, 102, 500):
            assert common_prefix_blocks(r, rots[j]) == 0

    def test_partial_blocks(self):
        t = GWord.t
        a, b = GWord.from_h(A_GEN), GWord.from_h(B_GEN)
        w1 = t(3) * a * t(-2) * b * t(4)
        w2 = t(3) * a * t(-2) * b * t(5)
        w3 = t(3) * a * t(-2) * a
        w4 = t(4) * a
        assert common_prefix_blocks(w1, w2) == 2
        assert common_prefix_blocks(w1, w3) == 2
        assert common_prefix_blocks(w1, w4) == 0


class TestConjugatePrefix:
    SMALL_BALL = [IDENTITY, A_GEN, B_GEN, h_inv(A_GEN), h_inv(B_GEN), B_GEN * h_inv(A_GEN)]

    def test_small_ball(self):
        res = conjugate_prefix_check(default_spec(), ball=self.SMALL_BALL)
        assert res.shifts == 4442
        assert res.conjugates_checked == 4442 * len(self.SMALL_BALL)
        assert res.holds
        assert res.max_prefix_blocks <= 3

    def test_harness_can_fail(self):
        # shifts starting inside a t-run share one whole block with each other
        res = conjugate_prefix_check(default_spec(), ball=[IDENTITY], bound=0)
        assert not res.holds
        assert res.max_prefix_blocks == 1

    def test_ball_contents(self):
        ball = h_ball(8, 2, 2)
        assert len(ball) == len(set(ball))
        assert IDENTITY in ball and HElement.of(-2, 2) in ball
        assert all(abs(g.q.num) <= 8 and g.q.exp <= 2 and abs(g.k) <= 2 for g in ball)
