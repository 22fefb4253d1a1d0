"""
fracsinc - Excecoes

Hierarquia unica com raiz em FracSincError. As mensagens curtas em ingles
("degenerate shape", "kernel not PSD", ...) sao estaveis: a CLI e os testes
dependem delas.

A CLI mapeia:
- ConfigError           -> exit 1 (erro de uso)
- demais FracSincError  -> exit 2 (falha numerica)
"""

from typing import Any, Optional


# ============ EXCECOES CUSTOMIZADAS ============

class FracSincError(Exception):
    """Erro base do fracsinc"""


class InvalidParameterError(FracSincError, ValueError):
    """Parametro fora do dominio permitido (d, N, tol, ...)"""


class InvalidOrderError(InvalidParameterError):
    """Ordem fracionaria fora de (0, 1)"""

    def __init__(self, message: str = "invalid fractional order"):
        super().__init__(message)


class ConfigError(FracSincError):
    """Arquivo de configuracao ausente ou invalido"""


# ---------- dominio ----------

class ShapeError(FracSincError):
    """Forma geometrica malformada"""

    def __init__(self, message: str = "degenerate shape"):
        super().__init__(message)


class EmptyDomainError(FracSincError):
    """Nenhum ponto da malha cai dentro do dominio"""

    def __init__(self, message: str = "empty discrete domain"):
        super().__init__(message)


class BoundingBoxError(FracSincError):
    """Dominio aumentado sai da caixa unitaria"""

    def __init__(self, message: str = "enlarged domain exceeds bounding box"):
        super().__init__(message)


# ---------- kernel ----------

class OracleQuadratureError(FracSincError):
    """Quadratura adaptativa nao convergiu dentro do orcamento de paineis"""

    def __init__(self, estimate: float, message: str = "oracle quadrature failed"):
        super().__init__(f"{message} (estimated error {estimate:.3e})")
        self.estimate = estimate


class KernelTooLargeError(FracSincError):
    """Estimativa de memoria da montagem acima do limite"""

    def __init__(self, required: int, cap: int):
        super().__init__(f"kernel too large ({required} bytes > cap {cap})")
        self.required = required
        self.cap = cap


class KernelFileError(FracSincError):
    """Erro base de leitura de arquivos FSK1"""


class MagicMismatchError(KernelFileError):
    def __init__(self, found: Any):
        super().__init__(f"magic mismatch (found {found!r})")


class ChecksumMismatchError(KernelFileError):
    def __init__(self, expected: str, found: str):
        super().__init__(f"checksum mismatch (header {expected[:12]}, payload {found[:12]})")


class TruncatedPayloadError(KernelFileError):
    def __init__(self, expected: int, found: int):
        super().__init__(f"truncated payload ({found} of {expected} bytes)")


# ---------- operador ----------

class ConvolutionIntegrityError(FracSincError):
    """Residuo imaginario da convolucao FFT acima do limite"""

    def __init__(self, residue: float):
        super().__init__(f"convolution integrity (imaginary residue {residue:.3e})")
        self.residue = residue


class SizeGuardError(FracSincError):
    """Problema grande demais para o caminho denso"""


# ---------- lado direito ----------

class NonFiniteValueError(FracSincError):
    """Callback retornou NaN/inf"""

    def __init__(self, index: tuple):
        super().__init__(f"non-finite value at index {index}")
        self.index = index


class MollifierError(FracSincError):
    """Tabulacao do mollifier degenerada"""


class ExtensionError(FracSincError):
    """Suporte do mollifier sai da regiao onde a extensao esta definida"""

    def __init__(self, message: str = "extension insufficient; increase rho"):
        super().__init__(message)


# ---------- solver ----------

class SolverDidNotConverge(FracSincError):
    """max_iter atingido; carrega o melhor iterado e o relatorio"""

    def __init__(self, best_iterate: Any, report: Any):
        super().__init__(
            f"solver did not converge in {report.iterations} iterations "
            f"(best relative residual {report.final_relative_residual:.3e})"
        )
        self.best_iterate = best_iterate
        self.report = report


class MatrixNotSPDError(FracSincError):
    def __init__(self, message: str = "matrix not SPD"):
        super().__init__(message)


# ---------- normas / taxas ----------

class KernelNotPSDError(FracSincError):
    def __init__(self, radicand: float):
        super().__init__(f"kernel not PSD (radicand {radicand:.3e})")
        self.radicand = radicand


class InvalidErrorSequenceError(FracSincError):
    def __init__(self, message: str = "invalid error sequence"):
        super().__init__(message)


class InsufficientPointsError(FracSincError):
    def __init__(self, count: int):
        super().__init__(f"insufficient points ({count} < 3)")
        self.count = count


# ---------- pipeline ----------

class StageError(FracSincError):
    """Falha em um estagio do estudo de convergencia"""

    def __init__(self, stage: str, n: Optional[int], cause: Exception):
        where = f"N={n}" if n is not None else "setup"
        super().__init__(f"stage '{stage}' failed at {where}: {cause}")
        self.stage = stage
        self.n = n
        self.cause = cause


class KernelValidationError(FracSincError):
    """Entradas do kernel fora da tolerancia contra o oraculo"""

    def __init__(self, worst: float, tol: float):
        super().__init__(f"kernel validation failed (worst relative deviation {worst:.3e} > {tol:.1e})")
        self.worst = worst
        self.tol = tol
