import numpy as np
import pytest

from islr.audio import Spectrogram, denoise_speech, istft, stft
from islr.exceptions import BadParams
from islr.metrics import snr_db
from islr.solver import SolverConfig
from islr.tuning import config_from_betas


def voiced(n=4000, fs=8000, seed=0):
    """Harmonic tone bursts: sparse, repeated spectral ridges."""
    t = np.arange(n) / fs
    env = np.clip(np.sin(2 * np.pi * 3 * t), 0, None)
    return 0.3 * env * sum(np.sin(2 * np.pi * 150 * h * t) / h for h in range(1, 6))


def test_stft_examples():
    s = stft(np.zeros(300))
    assert s.data.shape[0] == 257 and not np.any(s.data)
    dc = stft(np.ones(256))
    mags = np.abs(dc.data)
    interior = mags[:, 2:-2]
    assert np.all(np.argmax(interior, axis=0) == 0)


@pytest.mark.parametrize("n", [1, 31, 32, 33, 100, 1000, 16000])
def test_round_trip(n):
    x = np.random.default_rng(n).normal(size=n)
    assert np.max(np.abs(istft(stft(x)) - x)) < 1e-10


def test_istft_linear_and_zero():
    rng = np.random.default_rng(1)
    s1, s2 = stft(rng.normal(size=500)), stft(rng.normal(size=500))
    combo = Spectrogram(2.5 * s1.data + s2.data, 64, 32, 512, 500)
    np.testing.assert_allclose(istft(combo), 2.5 * istft(s1) + istft(s2), atol=1e-10)
    zero = Spectrogram(np.zeros_like(s1.data), 64, 32, 512, 500)
    assert not np.any(istft(zero))


def test_bad_params():
    with pytest.raises(BadParams):
        stft(np.ones(10), window_len=64, hop=16)
    with pytest.raises(BadParams):
        stft(np.ones(10), window_len=64, hop=32, nfft=32)
    with pytest.raises(BadParams):
        stft(np.array([]))
    s = stft(np.ones(100))
    with pytest.raises(BadParams):
        istft(Spectrogram(s.data[:, :-1], 64, 32, 512, 100))


def test_noise_scaling():
    w = np.random.default_rng(0).normal(scale=0.03, size=20000)
    rms = np.sqrt(np.mean(np.abs(stft(w).data[1:-1]) ** 2))
    assert rms == pytest.approx(0.03, rel=0.05)


@pytest.mark.parametrize("mode", ["complex", "magnitude"])
def test_denoise_zero_regularization_is_identity(mode):
    x = np.random.default_rng(2).normal(size=700)
    y = denoise_speech(x, SolverConfig.build(0, 0), mode=mode)
    assert np.max(np.abs(y - x)) < 1e-10


def test_denoise_zero_signal():
    y = denoise_speech(np.zeros(400), config_from_betas(1, 2, 0.03))
    assert y.shape == (400,) and not np.any(y)


@pytest.mark.parametrize("mode", ["complex", "magnitude"])
def test_denoise_improves_snr(mode):
    clean = voiced()
    noisy = clean + 0.03 * np.random.default_rng(5).normal(size=clean.size)
    out = denoise_speech(noisy, config_from_betas(1, 2, 0.03), mode=mode)
    assert out.shape == clean.shape
    assert snr_db(clean, out) > snr_db(clean, noisy) + 3


def test_magnitude_mode_energy_bound():
    from islr.audio import stft as S
    from islr.solver import solve

    clean = voiced(2000)
    noisy = clean + 0.03 * np.random.default_rng(6).normal(size=clean.size)
    cfg = config_from_betas(1, 2, 0.03)
    mag = np.abs(S(noisy).data)
    est = solve(mag, cfg).X
    assert np.linalg.norm(est) <= np.linalg.norm(mag)


def test_denoise_bad_mode():
    with pytest.raises(ValueError):
        denoise_speech(np.ones(100), config_from_betas(1, 1, 0.1), mode="phase")
