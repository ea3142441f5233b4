"""
Unit tests for the chord module.
"""

import math

import numpy as np
import pytest

from modules.body import Location, SupportBody, SupportFunction
from modules.chords import chord_at, chord_profile_samples, chords_of_length, max_chord
from modules.errors import LengthOutOfRange
from modules.generator import FuzzConfig, random_body
from modules.oracle import oracle_chords, polygonize


class TestChordAt:
    """Test cases for chord_at."""

    def test_diameter_chord(self, unit_disk):
        """The middle horizontal chord of the unit disk is its diameter."""
        chord = chord_at(max_chord(unit_disk, math.pi / 2), 0.5)
        assert chord.length == pytest.approx(2.0)
        assert chord.p == pytest.approx((-1.0, 0.0), abs=1e-12)
        assert chord.q == pytest.approx((1.0, 0.0), abs=1e-12)

    def test_off_center_chord(self, unit_disk):
        """t = 0.2 is the line y = 0.6."""
        chord = chord_at(max_chord(unit_disk, math.pi / 2), 0.2)
        assert chord.s == pytest.approx(0.6)
        assert chord.length == pytest.approx(1.6)
        assert chord.p == pytest.approx((-0.8, 0.6), abs=1e-12)
        assert chord.q == pytest.approx((0.8, 0.6), abs=1e-12)

    def test_degenerate_ends(self, unit_disk):
        """The ends of the parameter range are the support points."""
        profile = max_chord(unit_disk, math.pi / 2)
        assert chord_at(profile, 0.0).length == 0.0
        assert chord_at(profile, 1.0).q == pytest.approx((0.0, -1.0), abs=1e-15)
        assert chord_at(profile, 1.7).t == 1.0

    def test_endpoints_on_boundary(self, ellipse_shape):
        """Endpoints classify Boundary and the chord is perpendicular to u(w)."""
        body = SupportBody(ellipse_shape, (0.2, 0.1), 0.3)
        profile = max_chord(body, 1.1)
        for t in (0.1, 0.35, 0.8):
            chord = chord_at(profile, t)
            assert body.contains(chord.p).location is Location.BOUNDARY
            assert body.contains(chord.q).location is Location.BOUNDARY
            direction = chord.q - chord.p
            assert direction.dot(profile.direction) == pytest.approx(chord.length)


class TestMaxChord:
    """Test cases for max_chord."""

    @pytest.mark.parametrize("w", [0.0, 0.9, math.pi / 2, 4.0])
    def test_disk(self, unit_disk, w):
        """Every direction of the unit disk has η = 2 at the middle."""
        profile = max_chord(unit_disk, w)
        assert profile.eta == pytest.approx(2.0, abs=1e-9)
        assert profile.t_max == pytest.approx(0.5, abs=1e-6)

    def test_scaled_disk(self):
        """Disk of radius 3 has η = 6."""
        assert max_chord(SupportBody(SupportFunction.disk(3.0)), 0.4).eta == pytest.approx(6.0, abs=1e-9)

    def test_ellipse_axes(self, ellipse_shape):
        """Chords perpendicular to the long axis peak at the short width and vice versa."""
        body = SupportBody(ellipse_shape)
        assert max_chord(body, 0.0).eta == pytest.approx(1.6, abs=1e-8)
        assert max_chord(body, math.pi / 2).eta == pytest.approx(2.4, abs=1e-8)

    def test_to_dict(self, unit_disk):
        """The profile serializes its support points."""
        data = max_chord(unit_disk, math.pi / 2).to_dict()
        assert data["h_w"] == pytest.approx([0.0, 1.0], abs=1e-15)
        assert data["h_minus_w"] == pytest.approx([0.0, -1.0], abs=1e-15)


class TestChordsOfLength:
    """Test cases for chords_of_length."""

    def test_unit_length(self, unit_disk):
        """Chords of length 1 lie on y = ±√3/2."""
        first, second = chords_of_length(max_chord(unit_disk, math.pi / 2), 1.0)
        y = math.sqrt(3.0) / 2
        assert first.p == pytest.approx((-0.5, y), abs=1e-9)
        assert first.q == pytest.approx((0.5, y), abs=1e-9)
        assert second.p == pytest.approx((-0.5, -y), abs=1e-9)
        assert second.q == pytest.approx((0.5, -y), abs=1e-9)

    def test_near_diameter(self, unit_disk):
        """Length 1.999 sits symmetrically close to the center line."""
        first, second = chords_of_length(max_chord(unit_disk, math.pi / 2), 1.999)
        y = math.sqrt(1.0 - 0.9995 ** 2)
        assert first.s == pytest.approx(y, abs=1e-9)
        assert second.s == pytest.approx(-y, abs=1e-9)

    @pytest.mark.parametrize("r", [0.0, -1.0, 2.0, 2.5])
    def test_out_of_range(self, unit_disk, r):
        """Lengths outside (0, η) are rejected."""
        with pytest.raises(LengthOutOfRange):
            chords_of_length(max_chord(unit_disk, 0.0), r)

    def test_random_bodies(self, rng):
        """Both chords have the requested length and no third offset matches it."""
        cfg = FuzzConfig(seed=0, trials=1)
        for _ in range(5):
            body = random_body(rng, cfg)
            w = float(rng.uniform(0.0, 2 * math.pi))
            profile = max_chord(body, w)
            r = 0.7 * profile.eta
            chords = chords_of_length(profile, r)
            assert [c.length for c in chords] == pytest.approx([r, r], abs=1e-9)

            samples = chord_profile_samples(profile, 2001)
            lengths = np.array([length for _, length in samples])
            crossings = np.count_nonzero(np.diff(np.sign(lengths - r)) != 0)
            assert crossings == 2


class TestChordProfileSamples:
    """Test cases for chord_profile_samples."""

    def test_three_samples(self, unit_disk):
        """Ends vanish and the middle is the diameter."""
        samples = chord_profile_samples(max_chord(unit_disk, math.pi / 2), 3)
        assert [t for t, _ in samples] == pytest.approx([0.0, 0.5, 1.0])
        assert [length for _, length in samples] == pytest.approx([0.0, 2.0, 0.0], abs=1e-12)

    def test_disk_profile_formula(self, unit_disk):
        """The disk profile is 2√(1 - s²) with s = 1 - 2t."""
        for t, length in chord_profile_samples(max_chord(unit_disk, 1.3), 101):
            s = 1.0 - 2.0 * t
            assert length == pytest.approx(2.0 * math.sqrt(max(0.0, 1.0 - s * s)), abs=1e-6)

    def test_unimodal(self, rng):
        """Differences change sign exactly once."""
        cfg = FuzzConfig(seed=0, trials=1)
        for _ in range(3):
            profile = max_chord(random_body(rng, cfg), float(rng.uniform(0.0, 2 * math.pi)))
            lengths = np.array([length for _, length in chord_profile_samples(profile, 1001)])
            signs = np.sign(np.diff(lengths))
            assert np.all(signs != 0)
            assert np.count_nonzero(np.diff(signs)) == 1

    def test_too_few_samples(self, unit_disk):
        """At least two samples are required."""
        with pytest.raises(ValueError):
            chord_profile_samples(max_chord(unit_disk, 0.0), 1)


def turn(point, angle):
    c, s = math.cos(angle), math.sin(angle)
    return (c * point[0] - s * point[1], s * point[0] + c * point[1])


class TestChordSymmetry:
    """Test cases for how chords follow rotations of the body."""

    @pytest.mark.parametrize("angle", [0.4, math.pi / 2, 2.9])
    def test_rotation_carries_chords(self, ellipse_shape, angle):
        """Rotating body and direction together rotates the chords."""
        body = SupportBody(ellipse_shape, (0.2, -0.3), 0.25)
        w = 1.1
        profile = max_chord(body, w)
        turned = max_chord(body.rotated(angle), w + angle)
        assert turned.eta == pytest.approx(profile.eta, abs=1e-9)

        r = 0.6 * profile.eta
        for chord, rotated in zip(chords_of_length(profile, r), chords_of_length(turned, r)):
            assert rotated.p == pytest.approx(turn(chord.p, angle), abs=1e-9)
            assert rotated.q == pytest.approx(turn(chord.q, angle), abs=1e-9)

    def test_random_bodies_rotate(self, rng):
        """The same holds for random bodies and directions."""
        cfg = FuzzConfig(seed=0, trials=1)
        for _ in range(10):
            body = random_body(rng, cfg)
            w, angle = rng.uniform(0.0, 2 * math.pi, size=2)
            profile = max_chord(body, float(w))
            turned = max_chord(body.rotated(float(angle)), float(w + angle))
            r = float(rng.uniform(0.1, 0.9)) * profile.eta
            for chord, rotated in zip(chords_of_length(profile, r), chords_of_length(turned, r)):
                assert rotated.p == pytest.approx(turn(chord.p, angle), abs=1e-9)
                assert rotated.q == pytest.approx(turn(chord.q, angle), abs=1e-9)


@pytest.mark.slow
class TestDenseChordScan:
    """Exactly two chords of each length, checked against a dense offset scan."""

    def test_two_crossings(self, rng):
        """100 random (body, w, r) triples, 10^5 offsets each."""
        cfg = FuzzConfig(seed=0, trials=1)
        for _ in range(100):
            body = random_body(rng, cfg)
            w = float(rng.uniform(0.0, 2 * math.pi))
            profile = max_chord(body, w)
            r = float(rng.uniform(0.05, 0.95)) * profile.eta

            chords = chords_of_length(profile, r)
            assert [c.length for c in chords] == pytest.approx([r, r], abs=1e-9)

            lengths = np.array([length for _, length in oracle_chords(polygonize(body, 2 ** 16), w, 100_000)])
            crossings = np.count_nonzero(np.diff(np.sign(lengths - r)) != 0)
            assert crossings == 2
