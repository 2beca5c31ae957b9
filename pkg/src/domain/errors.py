from typing import Iterable, Optional


class ExtractionError(Exception):
    """
    Base class for every error the extraction pipeline reports to the CLI.
    """


class ConfigError(ExtractionError):
    pass


class AnnotationParseError(ExtractionError):
    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class AnnotationSchemaError(ExtractionError):
    def __init__(self, message: str, field: Optional[str] = None, sentence_id: Optional[int] = None):
        self.field = field
        self.sentence_id = sentence_id
        where = []
        if sentence_id is not None:
            where.append(f"sentence {sentence_id}")
        if field:
            where.append(f"field '{field}'")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)


class ServiceConnectionError(ExtractionError):
    pass


class ServiceStatusError(ExtractionError):
    def __init__(self, status_code: int, body: str = ""):
        self.status_code = status_code
        super().__init__(f"annotation service answered HTTP {status_code}: {body[:200]}")


class GraphContractError(ExtractionError, IndexError):
    pass


class RuleValidationError(ExtractionError):
    def __init__(self, message: str, path: str = "$"):
        self.path = path
        super().__init__(f"{path}: {message}")


class GazetteerError(ExtractionError):
    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"gazetteer line {line_number}: {message}"
        super().__init__(message)


class AlignmentError(ExtractionError):
    def __init__(self, message: str, sentence_id: Optional[int] = None):
        self.sentence_id = sentence_id
        if sentence_id is not None:
            message = f"sentence {sentence_id}: {message}"
        super().__init__(message)


class LabelSchemaError(ExtractionError):
    def __init__(self, message: str, sentence_num: Optional[int] = None):
        self.sentence_num = sentence_num
        if sentence_num is not None:
            message = f"sentence_num {sentence_num}: {message}"
        super().__init__(message)


class UnknownDimensionError(ExtractionError):
    def __init__(self, dimension: str, known: Iterable[str]):
        self.dimension = dimension
        self.known = sorted(set(known))
        super().__init__(f"unknown dimension '{dimension}'; known dimensions: {', '.join(self.known)}")
