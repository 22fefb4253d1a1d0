"""
fracsinc - Persistencia de kernels (formato FSK1)

Layout do arquivo:
    linha 1: cabecalho JSON {"magic": "FSK1", "d", "N", "s", "oversample", "checksum"}
    "\\n"
    payload: float64 little-endian do octante {0..N-1}^d em ordem lexicografica

checksum = sha256 hex do payload. A DFT do mergulho circulante nao e salva;
e recalculada na carga.
"""

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Optional, Union

import numpy as np

from ..errors import (
    ChecksumMismatchError,
    InvalidParameterError,
    KernelFileError,
    MagicMismatchError,
    TruncatedPayloadError,
)
from .assembly import assemble_kernel, default_oversample
from .base import SpectralKernel, check_dimension, check_order

logger = logging.getLogger(__name__)

MAGIC = "FSK1"
PAYLOAD_DTYPE = "<f8"

PathLike = Union[str, Path]


def _hash(payload: bytes) -> str:
    return hashlib.sha256(payload).hexdigest()


def kernel_save(kernel: SpectralKernel, path: PathLike) -> Path:
    """Grava o kernel em FSK1 (escrita atomica via arquivo temporario)."""
    path = Path(path)
    payload = np.ascontiguousarray(kernel.values, dtype=PAYLOAD_DTYPE).tobytes()
    header = {
        "magic": MAGIC,
        "d": kernel.d,
        "N": kernel.n,
        "s": kernel.s,
        "oversample": kernel.oversample,
        "checksum": _hash(payload),
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(json.dumps(header).encode("utf-8"))
        fh.write(b"\n")
        fh.write(payload)
    os.replace(tmp, path)
    logger.info(f"Kernel salvo em {path} ({len(payload)} bytes)")
    return path


def kernel_load(path: PathLike) -> SpectralKernel:
    """
    Le um arquivo FSK1.

    Raises:
        MagicMismatchError: magic diferente de FSK1
        InvalidOrderError: s do cabecalho fora de (0, 1)
        TruncatedPayloadError: payload menor que 8 * N^d bytes
        ChecksumMismatchError: sha256 do payload nao confere
        KernelFileError: cabecalho ilegivel ou bytes sobrando
    """
    raw = Path(path).read_bytes()
    newline = raw.find(b"\n")
    if newline < 0:
        raise KernelFileError(f"cabecalho ausente em {path}")
    try:
        header = json.loads(raw[:newline].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise KernelFileError(f"cabecalho invalido em {path}: {e}") from e
    if not isinstance(header, dict) or header.get("magic") != MAGIC:
        raise MagicMismatchError(header.get("magic") if isinstance(header, dict) else header)

    try:
        d = int(header["d"])
        s = float(header["s"])
        n = int(header["N"])
        oversample = None if header.get("oversample") is None else int(header["oversample"])
        checksum = str(header["checksum"])
    except (KeyError, TypeError, ValueError) as e:
        raise KernelFileError(f"campo invalido no cabecalho de {path}: {e}") from e
    d = check_dimension(d)
    s = check_order(s)
    if oversample is None:
        oversample = default_oversample(d)

    payload = raw[newline + 1:]
    expected = 8 * n ** d
    if len(payload) < expected:
        raise TruncatedPayloadError(expected, len(payload))
    if len(payload) > expected:
        raise KernelFileError(f"{len(payload) - expected} bytes sobrando em {path}")
    found = _hash(payload)
    if found != checksum:
        raise ChecksumMismatchError(checksum, found)

    values = np.frombuffer(payload, dtype=PAYLOAD_DTYPE).reshape((n,) * d)
    logger.debug(f"Kernel carregado de {path}: d={d} N={n} s={s}")
    return SpectralKernel(d=d, n=n, s=s, values=values, oversample=oversample,
                          metadata={"source": str(path), "warnings": []})


def kernel_cache_path(cache_dir: PathLike, d: int, n: int, s: float, oversample: int) -> Path:
    return Path(cache_dir) / f"kernel_d{d}_n{n}_s{s!r}_o{oversample}.fsk"


def cached_kernel(
    d: int,
    n: int,
    s: float,
    oversample: Optional[int] = None,
    cache_dir: Optional[PathLike] = None,
) -> SpectralKernel:
    """Carrega do cache FSK1 se existir e for valido; senao monta e grava."""
    if oversample is None:
        oversample = default_oversample(d)
    if cache_dir is None:
        return assemble_kernel(d, n, s, oversample)
    path = kernel_cache_path(cache_dir, d, n, s, oversample)
    if path.exists():
        try:
            kernel = kernel_load(path)
            if (kernel.d, kernel.n, kernel.s, kernel.oversample) != (d, n, s, oversample):
                raise KernelFileError(f"cabecalho nao confere com d={d} N={n} s={s} o={oversample}")
            logger.info(f"Cache hit: {path.name}")
            return kernel
        except (KernelFileError, InvalidParameterError) as e:
            logger.warning(f"Cache invalido em {path.name} ({e}); remontando")
    logger.info(f"Cache miss: {path.name}")
    kernel = assemble_kernel(d, n, s, oversample)
    kernel_save(kernel, path)
    return kernel
