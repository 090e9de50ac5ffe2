"""Minimal RIFF/WAVE reader and writer.

Supports exactly the two encodings the evaluator accepts: 16-bit integer PCM
(normalized to [-1, 1) by 1/32768) and 32-bit IEEE float (passed through).
Multichannel files are rejected unless a channel index selects one; sample
rates are never resampled.
"""

import struct

import numpy as np

from .signals import AudioSignal

_FORMAT_PCM = 1
_FORMAT_IEEE_FLOAT = 3
_INT16_SCALE = 32768.0


class WavFormatError(ValueError):
    """Raised when a file is not a WAV encoding this package supports."""


def load_audio(path, channel: int | None = None) -> AudioSignal:
    """Decode a RIFF/WAVE file into a mono AudioSignal.

    Args:
        path: file to read.
        channel: zero-based channel to extract from a multichannel file;
            leave None for mono files.

    Raises:
        WavFormatError: malformed container or unsupported encoding; the
            message names the offending chunk or field.
        FileNotFoundError / OSError: the file cannot be read.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 12 or data[:4] != b"RIFF":
        raise WavFormatError(f"{path}: not a RIFF file")
    if data[8:12] != b"WAVE":
        raise WavFormatError(f"{path}: RIFF form type is {data[8:12]!r}, not 'WAVE'")

    fmt_body = None
    payload = None
    offset = 12
    while offset + 8 <= len(data):
        chunk_id, size = struct.unpack_from("<4sI", data, offset)
        offset += 8
        body = data[offset : offset + size]
        if len(body) < size:
            name = chunk_id.decode("ascii", errors="replace")
            raise WavFormatError(f"{path}: truncated {name!r} chunk")
        if chunk_id == b"fmt ":
            fmt_body = body
        elif chunk_id == b"data":
            payload = body
        offset += size + (size & 1)  # chunks are word-aligned

    if fmt_body is None:
        raise WavFormatError(f"{path}: missing 'fmt ' chunk")
    if payload is None:
        raise WavFormatError(f"{path}: missing 'data' chunk")
    if len(fmt_body) < 16:
        raise WavFormatError(f"{path}: 'fmt ' chunk too short ({len(fmt_body)} bytes)")

    format_tag, n_channels, sample_rate, _, _, bits = struct.unpack_from(
        "<HHIIHH", fmt_body, 0
    )
    if format_tag == _FORMAT_PCM and bits == 16:
        dtype = np.dtype("<i2")
    elif format_tag == _FORMAT_IEEE_FLOAT and bits == 32:
        dtype = np.dtype("<f4")
    else:
        raise WavFormatError(
            f"{path}: 'fmt ' chunk declares format tag {format_tag} with "
            f"{bits} bits per sample; supported encodings are 16-bit PCM "
            f"(tag 1) and 32-bit IEEE float (tag 3)"
        )
    if n_channels < 1:
        raise WavFormatError(f"{path}: 'fmt ' chunk declares {n_channels} channels")

    frame_bytes = dtype.itemsize * n_channels
    usable = len(payload) - len(payload) % frame_bytes
    samples = np.frombuffer(payload[:usable], dtype=dtype)
    if n_channels > 1:
        if channel is None:
            raise WavFormatError(
                f"{path}: {n_channels} channels; only mono input is supported "
                f"(pass a channel index to select one)"
            )
        if not 0 <= channel < n_channels:
            raise ValueError(
                f"channel {channel} out of range for a {n_channels}-channel file"
            )
        samples = samples[channel::n_channels]

    if format_tag == _FORMAT_PCM:
        decoded = samples.astype(np.float64) / _INT16_SCALE
    else:
        decoded = samples.astype(np.float64)
    return AudioSignal(decoded, int(sample_rate))


def save_audio(signal: AudioSignal, path, encoding: str = "pcm16") -> None:
    """Write a signal as RIFF/WAVE.

    ``encoding`` is 'pcm16' (samples scaled by 32768, rounded and clipped to
    the int16 range) or 'float32'. PCM16 round-trips every value the loader
    can produce exactly.
    """
    if encoding == "pcm16":
        scaled = np.clip(np.rint(signal.samples * _INT16_SCALE), -32768, 32767)
        payload = scaled.astype("<i2").tobytes()
        format_tag, bits = _FORMAT_PCM, 16
    elif encoding == "float32":
        payload = signal.samples.astype("<f4").tobytes()
        format_tag, bits = _FORMAT_IEEE_FLOAT, 32
    else:
        raise ValueError(f"unknown encoding {encoding!r} (use 'pcm16' or 'float32')")

    block_align = bits // 8
    fmt_body = struct.pack(
        "<HHIIHH",
        format_tag,
        1,
        signal.sample_rate,
        signal.sample_rate * block_align,
        block_align,
        bits,
    )
    chunks = [(b"fmt ", fmt_body)]
    if format_tag == _FORMAT_IEEE_FLOAT:
        chunks.append((b"fact", struct.pack("<I", len(signal))))
    chunks.append((b"data", payload))

    body = bytearray()
    for chunk_id, chunk_body in chunks:
        body += struct.pack("<4sI", chunk_id, len(chunk_body))
        body += chunk_body
        if len(chunk_body) & 1:
            body += b"\x00"
    with open(path, "wb") as fh:
        fh.write(struct.pack("<4sI4s", b"RIFF", 4 + len(body), b"WAVE"))
        fh.write(body)
