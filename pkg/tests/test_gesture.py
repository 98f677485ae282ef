"""Tilt conversion and command classification."""

import pytest
from hypothesis import given, strategies as st

from roversim.gesture import (
    AccelSample,
    AdcReading,
    CommandDecodeError,
    DriveCommand,
    NEUTRAL_COUNTS,
    TraceError,
    classify,
    command_code,
    decode_command,
    load_trace,
    sample_to_counts,
)


def adc_oracle(a_g: float) -> int:
    """Independent arithmetic for the transfer function, kept brute-simple."""
    a_g = min(3.0, max(-3.0, a_g))
    volts = min(3.3, max(0.0, 1.65 + 0.330 * a_g))
    return min(1023, max(0, round(1023 * volts / 5.0)))


def reading(dx: int, dy: int) -> AdcReading:
    return AdcReading(x_counts=NEUTRAL_COUNTS + dx, y_counts=NEUTRAL_COUNTS + dy)


class TestSampleToCounts:
    def test_neutral(self):
        assert adc_oracle(0.0) == 338  # frozen before implementation
        r = sample_to_counts(AccelSample(0.0, 0.0, tick=3))
        assert (r.x_counts, r.y_counts, r.tick) == (338, 338, 3)

    def test_one_g(self):
        assert adc_oracle(1.0) == 405
        r = sample_to_counts(AccelSample(1.0, 0.0))
        assert (r.x_counts, r.y_counts) == (405, 338)

    def test_clamps_to_full_scale(self):
        assert sample_to_counts(AccelSample(-10.0, 0.0)).x_counts == \
            sample_to_counts(AccelSample(-3.0, 0.0)).x_counts

    @given(st.floats(-10, 10, allow_nan=False), st.floats(-10, 10, allow_nan=False))
    def test_matches_oracle_and_range(self, x_g, y_g):
        r = sample_to_counts(AccelSample(x_g, y_g))
        assert r.x_counts == adc_oracle(x_g)
        assert r.y_counts == adc_oracle(y_g)
        assert 0 <= r.x_counts <= 1023 and 0 <= r.y_counts <= 1023

    @given(st.floats(-4, 4, allow_nan=False), st.floats(0, 0.5, allow_nan=False))
    def test_monotone_in_tilt(self, x_g, bump):
        lo = sample_to_counts(AccelSample(x_g, 0.0)).x_counts
        hi = sample_to_counts(AccelSample(x_g + bump, 0.0)).x_counts
        assert hi >= lo

    def test_reading_range_enforced(self):
        with pytest.raises(ValueError):
            AdcReading(x_counts=1024, y_counts=0)
        with pytest.raises(ValueError):
            AdcReading(x_counts=0, y_counts=-1)


ALL_COMMANDS = list(DriveCommand)


class TestClassify:
    def test_forward_engages(self):
        assert classify(reading(0, 67), DriveCommand.STOP) is DriveCommand.FORWARD

    def test_neutral_stops(self):
        assert classify(reading(0, 0), DriveCommand.FORWARD) is DriveCommand.STOP

    def test_hysteresis_band_holds_but_does_not_engage(self):
        # deflection 22 sits between release (20) and engage (30)
        assert classify(reading(0, 22), DriveCommand.FORWARD) is DriveCommand.FORWARD
        assert classify(reading(0, 22), DriveCommand.STOP) is DriveCommand.STOP

    def test_all_four_directions(self):
        assert classify(reading(0, 67), DriveCommand.STOP) is DriveCommand.FORWARD
        assert classify(reading(0, -67), DriveCommand.STOP) is DriveCommand.BACKWARD
        assert classify(reading(67, 0), DriveCommand.STOP) is DriveCommand.RIGHT
        assert classify(reading(-67, 0), DriveCommand.STOP) is DriveCommand.LEFT

    def test_reversal_overrides_hold(self):
        assert classify(reading(0, -50), DriveCommand.FORWARD) is DriveCommand.BACKWARD

    def test_exact_diagonal_tie_holds_prev(self):
        assert classify(reading(40, 40), DriveCommand.FORWARD) is DriveCommand.FORWARD
        assert classify(reading(40, 40), DriveCommand.STOP) is DriveCommand.STOP

    @given(st.integers(-19, 19), st.integers(-19, 19), st.sampled_from(ALL_COMMANDS))
    def test_dead_zone_always_stops(self, dx, dy, prev):
        assert classify(reading(dx, dy), prev) is DriveCommand.STOP

    @given(
        st.integers(0, 1023), st.integers(0, 1023), st.sampled_from(ALL_COMMANDS)
    )
    def test_deterministic(self, x, y, prev):
        r = AdcReading(x_counts=x, y_counts=y)
        assert classify(r, prev) is classify(r, prev)

    @pytest.mark.parametrize("axis,sign,expected", [
        ("y", +1, DriveCommand.FORWARD),
        ("y", -1, DriveCommand.BACKWARD),
        ("x", +1, DriveCommand.RIGHT),
        ("x", -1, DriveCommand.LEFT),
    ])
    def test_no_chatter_on_alternating_stream(self, axis, sign, expected):
        prev = DriveCommand.STOP
        engaged = False
        for i in range(40):
            d = sign * (22 if i % 2 == 0 else 35)
            r = reading(d, 0) if axis == "x" else reading(0, d)
            prev = classify(r, prev)
            if prev is expected:
                engaged = True
            if engaged:
                assert prev is expected  # never drops back to STOP
        assert engaged


class TestWireCodes:
    def test_table(self):
        assert command_code(DriveCommand.FORWARD) == 0x01
        assert decode_command(0x00) is DriveCommand.STOP

    def test_round_trip_all(self):
        for c in ALL_COMMANDS:
            assert decode_command(command_code(c)) is c

    @pytest.mark.parametrize("bad", [0x05, 0x07, 0xFF])
    def test_decode_rejects_unknown(self, bad):
        with pytest.raises(CommandDecodeError):
            decode_command(bad)


class TestTraceLoading:
    def test_round_trip(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text("tick,x_g,y_g\n0,0.0,0.0\n5,0.1,-0.2\n")
        trace = load_trace(str(p))
        assert set(trace) == {0, 5}
        assert trace[5] == AccelSample(x_g=0.1, y_g=-0.2, tick=5)

    def test_empty_file(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("")
        with pytest.raises(TraceError, match="empty"):
            load_trace(str(p))

    def test_bad_header(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text("time,x,y\n0,0,0\n")
        with pytest.raises(TraceError, match="line 1"):
            load_trace(str(p))

    def test_malformed_row_names_line(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text("tick,x_g,y_g\n0,0.0,0.0\n1,zero,0.0\n")
        with pytest.raises(TraceError, match="line 3"):
            load_trace(str(p))

    def test_non_increasing_tick(self, tmp_path):
        p = tmp_path / "t.csv"
        p.write_text("tick,x_g,y_g\n4,0,0\n4,0,0\n")
        with pytest.raises(TraceError, match="not increasing"):
            load_trace(str(p))
