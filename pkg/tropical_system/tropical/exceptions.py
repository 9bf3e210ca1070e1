"""
Исключения тропической библиотеки.

Каждое исключение несёт код выхода CLI (exit_code), чтобы диспетчер команд
мог преобразовать его без таблицы соответствий.
"""
from typing import Optional


class TropicalError(Exception):
    """Базовое исключение библиотеки."""

    exit_code = 1


class ParseError(TropicalError):
    """
    Ошибка разбора входного файла.

    Args:
        message: Описание ошибки
        line: Номер строки (с единицы), если известен
        source: Имя файла или '<stdin>'
    """

    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, source: Optional[str] = None):
        self.line = line
        self.source = source
        location = ''
        if source is not None:
            location = source
        if line is not None:
            location = f'{location}:{line}' if location else f'line {line}'
        super().__init__(f'{location}: {message}' if location else message)


class DimensionError(TropicalError, ValueError):
    """Несовпадение размерностей или недопустимая размерность."""

    exit_code = 3


class PreconditionError(TropicalError):
    """Нарушено предусловие операции (например, separate() для точки из P)."""

    exit_code = 4


class CertificateError(TropicalError):
    """Внутренняя проверка сертификата не сошлась."""

    exit_code = 70
