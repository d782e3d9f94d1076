"""Over-complete STFT with exact inverse, and spectrogram-domain speech denoising.

Frames of ``window_len`` samples at 50% overlap are weighted by a periodic
square-root Hann window and zero-padded to ``nfft`` before the DFT. The
squared window sums to one across overlapping frames, so windowing again
at synthesis and overlap-adding inverts the transform exactly.

Spectrogram values are scaled by ``1/sqrt(sum(w**2))`` so that white noise
of standard deviation ``sigma`` in time gives bins of RMS modulus
``sigma``; this keeps ``lambda = beta * sigma`` meaningful in both domains.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import BadParams
from .solver import solve

WINDOW_LEN = 64
HOP = 32
NFFT = 512


@dataclass
class Spectrogram:
    data: np.ndarray  # (nfft//2 + 1, n_frames), complex
    window_len: int
    hop: int
    nfft: int
    signal_len: int


def _check_params(window_len, hop, nfft):
    if window_len < 2 or window_len % 2:
        raise BadParams(f"window_len must be an even integer >= 2, got {window_len}")
    if hop * 2 != window_len:
        raise BadParams(f"hop must be window_len/2 = {window_len // 2}, got {hop}")
    if nfft < window_len:
        raise BadParams(f"nfft ({nfft}) must be >= window_len ({window_len})")


def sqrt_hann(window_len):
    n = np.arange(window_len)
    return np.sqrt(0.5 - 0.5 * np.cos(2 * np.pi * n / window_len))


def _layout(signal_len, window_len, hop):
    front = window_len - hop
    n_frames = (front + signal_len - 1) // hop + 1
    return front, n_frames, (n_frames - 1) * hop + window_len


def stft(signal, window_len=WINDOW_LEN, hop=HOP, nfft=NFFT):
    x = np.asarray(signal, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise BadParams("signal must be a nonempty 1-D sequence")
    _check_params(window_len, hop, nfft)
    front, n_frames, total = _layout(x.size, window_len, hop)
    padded = np.zeros(total)
    padded[front:front + x.size] = x
    w = sqrt_hann(window_len)
    idx = np.arange(window_len)[:, None] + hop * np.arange(n_frames)[None, :]
    frames = padded[idx] * w[:, None]
    data = np.fft.rfft(frames, n=nfft, axis=0) / np.sqrt(np.sum(w**2))
    return Spectrogram(data, window_len, hop, nfft, x.size)


def istft(spec):
    """Overlap-add synthesis; exact left inverse of :func:`stft`."""
    _check_params(spec.window_len, spec.hop, spec.nfft)
    W, H = spec.window_len, spec.hop
    front, n_frames, total = _layout(spec.signal_len, W, H)
    if spec.data.shape != (spec.nfft // 2 + 1, n_frames):
        raise BadParams(
            f"spectrogram shape {spec.data.shape} does not match "
            f"{(spec.nfft // 2 + 1, n_frames)} for signal_len={spec.signal_len}"
        )
    w = sqrt_hann(W)
    frames = np.fft.irfft(spec.data * np.sqrt(np.sum(w**2)), n=spec.nfft, axis=0)[:W]
    frames *= w[:, None]
    out = np.zeros(total)
    norm = np.zeros(total)
    for f in range(n_frames):
        out[f * H:f * H + W] += frames[:, f]
        norm[f * H:f * H + W] += w**2
    out = out[front:front + spec.signal_len]
    return out / norm[front:front + spec.signal_len]


def denoise_speech(signal, cfg, mode="complex", window_len=WINDOW_LEN, hop=HOP, nfft=NFFT):
    """Denoise a waveform by sparse low-rank estimation of its spectrogram.

    ``mode="complex"`` runs the solver on the complex spectrogram (entrywise
    modulus shrinkage, complex SVD). ``mode="magnitude"`` runs it on the
    real magnitude spectrogram and reattaches the noisy phase.
    """
    spec = stft(signal, window_len, hop, nfft)
    if mode == "complex":
        est = solve(spec.data, cfg).X
    elif mode == "magnitude":
        mag = np.abs(spec.data)
        phase = np.exp(1j * np.angle(spec.data))
        est = solve(mag, cfg).X * phase
    else:
        raise ValueError(f"mode must be 'complex' or 'magnitude', got {mode!r}")
    return istft(Spectrogram(est, window_len, hop, nfft, spec.signal_len))
