"""
Configuracao centralizada do fracsinc.

Todos os caminhos e limites numericos ficam aqui para suportar:
- Override via variaveis de ambiente
- Execucao em CI com diretorios temporarios
- Maquinas com pouca memoria (limite de montagem do kernel)
"""

import os
from pathlib import Path

# Diretorio base (pode ser sobrescrito pela env FRACSINC_DIR)
FRACSINC_DIR = Path(os.getenv("FRACSINC_DIR", Path.home() / ".fracsinc"))

# Cache de kernels (arquivos FSK1) e de entradas do oraculo (diskcache)
KERNEL_CACHE_DIR = Path(os.getenv("FRACSINC_KERNEL_CACHE_DIR", FRACSINC_DIR / "kernels"))
ORACLE_CACHE_DIR = Path(os.getenv("FRACSINC_ORACLE_CACHE_DIR", FRACSINC_DIR / "oracle"))
ORACLE_CACHE_SIZE_LIMIT = 64 * 1024 * 1024  # 64MB

# Logging
LOG_LEVEL = os.getenv("FRACSINC_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

# Limites numericos
KERNEL_MEMORY_CAP = int(os.getenv("FRACSINC_KERNEL_MEMORY_CAP", str(2 * 1024 ** 3)))
FFT_WORKERS = int(os.getenv("FRACSINC_FFT_WORKERS", "1"))


def ensure_dirs():
    """Create necessary directories if they don't exist."""
    for directory in [FRACSINC_DIR, KERNEL_CACHE_DIR, ORACLE_CACHE_DIR]:
        directory.mkdir(parents=True, exist_ok=True)


if __name__ == "__main__":
    print("fracsinc - configuracao")
    print("=" * 50)
    print(f"FRACSINC_DIR:       {FRACSINC_DIR}")
    print(f"KERNEL_CACHE_DIR:   {KERNEL_CACHE_DIR}")
    print(f"ORACLE_CACHE_DIR:   {ORACLE_CACHE_DIR}")
    print(f"KERNEL_MEMORY_CAP:  {KERNEL_MEMORY_CAP}")
    print(f"FFT_WORKERS:        {FFT_WORKERS}")
    print("=" * 50)
    ensure_dirs()
    print("Diretorios criados/verificados")
