import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from witnessph.classify import (
    FFTModel,
    PipelineConfig,
    default_k_grid,
    fft_features,
    fft_grid,
    load_model,
    membership,
    membership_fft,
    periodogram,
    roc,
    roc_from_distances,
    save_model,
    train_fft,
    train_prf,
    window_prf,
)
from witnessph.embed import suggest_tau
from witnessph.errors import ClassificationError, FormatError, TrainingError, UnsupportedError
from witnessph.ingest import TimeSeries, WindowSpec, windows
from witnessph.synth import tone

RATE = 44100
FAST = PipelineConfig(tau=suggest_tau(RATE, 440), landmarks=60, grid=24, window_sec=0.01)


def short_windows(kind, n, seed=0, noise=0.01, sec=0.01):
    ts = tone(kind, 440, sec * n + 0.005, RATE, 4, noise, seed)
    return windows(ts, WindowSpec(sec, n))


def test_identical_windows_zero_sigma():
    w = short_windows("sine", 1, noise=0.0)[0]
    m = train_prf([w, w, w], FAST)
    assert m.sigma == 0
    assert np.array_equal(m.mean.values, window_prf(w, m.config).values)
    f = train_fft([w, w])
    assert f.sigma == 0


def test_train_errors():
    ws = short_windows("sine", 3)
    with pytest.raises(TrainingError):
        train_prf(ws[:1], FAST)
    with pytest.raises(TrainingError):
        train_prf([ws[0], TimeSeries(ws[1].samples[:-5], RATE)], FAST)
    with pytest.raises(TrainingError, match="window 1"):
        train_prf([ws[0], TimeSeries(ws[1].samples[:40], RATE), ws[2]], FAST)


def test_failing_window_is_named():
    ws = short_windows("sine", 2)
    tiny = [TimeSeries(w.samples[:60], RATE) for w in ws]  # fewer points than landmarks
    with pytest.raises(TrainingError, match="window 0"):
        train_prf(tiny, FAST)


def test_membership_rules():
    ws = short_windows("clarinet", 6)
    m = train_prf(ws, FAST)
    assert m.sigma > 0
    member, d = membership(m, ws[0], 1e6)
    assert member and d >= 0
    assert membership(m, ws[0], 0) == (False, d)
    with pytest.raises(ClassificationError):
        m.distance(TimeSeries(np.zeros(50), RATE))


def test_acceptance_monotone_in_k():
    ws = short_windows("clarinet", 5)
    m = train_prf(ws[:4], FAST)
    d = m.distance(ws[4])
    ks = np.linspace(0, 10, 50)
    accepted = [d < k * m.sigma for k in ks]
    # once accepted, accepted for every larger k
    first = accepted.index(True) if True in accepted else len(ks)
    assert all(accepted[first:]) and not any(accepted[:first])


def test_a440_tone_has_one_persistent_hole():
    ws = short_windows("clarinet", 25, sec=0.05)
    m = train_prf(ws, PipelineConfig(tau=suggest_tau(RATE, 440)))
    v = m.mean.values
    G = m.mean.resolution
    # a small, b large: exactly one class in every window
    assert v[G // 4, G - 1] == 1.0
    assert v[G // 8: G // 2, G // 2:].max() == 1.0
    for w in ws[:5]:
        g = window_prf(w, m.config)
        assert g.values[G // 4, G - 1] == 1


def test_fft_peak_and_zero():
    ts = tone("sine", 440, 0.05, RATE)
    f = fft_features(ts)
    grid = fft_grid()
    assert f.shape == (2000,) and grid[0] == pytest.approx(10) and grid[-1] == pytest.approx(10000)
    assert abs(grid[np.argmax(f)] - 440) <= abs(grid[np.argmin(np.abs(grid - 440))] - 440) + 20
    assert np.all(fft_features(TimeSeries(np.zeros(2205), RATE)) == 0)
    with pytest.raises(UnsupportedError):
        fft_features(TimeSeries(np.zeros(100), 16000))


def test_fft_peak_is_nearest_grid_point_for_bin_aligned_tone():
    # 2205 samples at 44100 Hz: 20 Hz bins, 440 Hz is bin 22
    ts = tone("sine", 440, 0.05, RATE)
    grid = fft_grid()
    assert np.argmax(fft_features(ts)) == np.argmin(np.abs(grid - 440))


def test_parseval():
    rng = np.random.default_rng(0)
    for n in (2205, 2000):
        x = rng.normal(size=n)
        _, p = periodogram(TimeSeries(x, RATE))
        one_sided = p[0] + 2 * p[1:-1].sum() + (p[-1] if n % 2 == 0 else 2 * p[-1])
        assert one_sided == pytest.approx(np.sum(x ** 2), rel=1e-6)


def test_fft_training_and_membership():
    ws = short_windows("clarinet", 8, sec=0.05)
    m = train_fft(ws)
    dists = [m.distance(w) for w in ws]
    assert np.std(dists) == pytest.approx(m.sigma)
    for d in dists:
        assert d <= max(dists)
    assert membership_fft(m, ws[0], 1e9)[0]
    viol = tone("viol", 440, 0.05, RATE, 8)
    assert not membership_fft(m, viol, 1.0)[0]


def test_roc_endpoints_and_monotone():
    pos = np.array([0.5, 1.0, 2.0])
    neg = np.array([3.0, 4.0])
    c = roc_from_distances(pos, neg, 1.0, [0, 0.75, 1.5, 2.5, 3.5, 100])
    assert (c.tpr[0], c.fpr[0]) == (0, 0)
    assert (c.tpr[-1], c.fpr[-1]) == (1, 1)
    assert c.tpr.tolist() == [0, 1 / 3, 2 / 3, 1, 1, 1]
    assert c.fpr.tolist() == [0, 0, 0, 0, 0.5, 1]


@settings(max_examples=50)
@given(st.lists(st.floats(0, 10), min_size=1, max_size=20), st.lists(st.floats(0, 10), min_size=1, max_size=20),
       st.floats(0.01, 3))
def test_roc_monotone_random(dp, dn, s):
    c = roc_from_distances(dp, dn, s, default_k_grid())
    assert np.all(np.diff(c.tpr) >= 0) and np.all(np.diff(c.fpr) >= 0)
    assert np.all((0 <= c.tpr) & (c.tpr <= 1))


def test_roc_rejects_empty():
    m = FFTModel(np.zeros(2000), 1.0)
    with pytest.raises(Exception):
        roc(m, [], [TimeSeries(np.zeros(2205), RATE)])


def test_default_k_grid():
    ks = default_k_grid()
    assert len(ks) == 100 and ks[0] > 0 and ks[-1] == 5.0


def test_model_round_trip(tmp_path):
    ws = short_windows("clarinet", 4)
    m = train_prf(ws, FAST)
    save_model(m, tmp_path / "m.txt")
    back = load_model(tmp_path / "m.txt")
    assert back.config == m.config and back.sigma == m.sigma
    assert np.array_equal(back.mean.values, m.mean.values) and back.mean.eps_max == m.mean.eps_max
    assert back.distance(ws[0]) == m.distance(ws[0])

    f = train_fft(short_windows("clarinet", 3, sec=0.05))
    save_model(f, tmp_path / "f.txt")
    fb = load_model(tmp_path / "f.txt")
    assert np.array_equal(fb.mean, f.mean) and fb.sigma == f.sigma


def test_bad_model_file(tmp_path):
    p = tmp_path / "x.txt"
    p.write_text("hello\n")
    with pytest.raises(FormatError):
        load_model(p)
    p.write_text("witnessph-model,99\nkind,prf\n")
    with pytest.raises(FormatError):
        load_model(p)
    p.write_text("witnessph-model,1\nkind,fft\n[config]\ntaper,none\n[sigma]\n1.0\n[mean]\n10.0,1.0\n")
    with pytest.raises(FormatError):
        load_model(p)


def test_scale_robustness():
    w = short_windows("clarinet", 1, seed=3)[0]
    cfg = PipelineConfig(tau=FAST.tau, landmarks=60, grid=24, eps_max=0.3)
    base = window_prf(w, cfg).values
    for c in (2.0, 0.5, -1.0, 3.7):
        scaled = TimeSeries(w.samples * c, w.rate)
        assert np.array_equal(window_prf(scaled, cfg).values, base)
