from typing import Optional


class IrTuneError(Exception):
    """Base class for every error raised by irtune."""


class UserError(IrTuneError):
    """Errors caused by user input. The CLI maps them to exit code 2."""


class InputReadError(UserError):
    """An input file (corpus, topics, run, qrels, config) cannot be read."""


# --- indexing -----------------------------------------------------------

class DuplicateDocno(UserError):
    def __init__(self, docno: str):
        super().__init__(f"duplicate docno: {docno}")
        self.docno = docno


class EmptyCollection(UserError):
    pass


class EmptyIndex(UserError):
    pass


# --- retrieval ----------------------------------------------------------

class DegenerateSmoothing(UserError):
    pass


class EmptyQuery(UserError):
    pass


# --- evaluation ---------------------------------------------------------

class NoRelevant(UserError):
    def __init__(self, topic: str):
        super().__init__(f"topic {topic} has no relevant documents")
        self.topic = topic


class NoOverlap(UserError):
    pass


class EmptyRun(UserError):
    pass


class ParseError(UserError):
    def __init__(self, line: int, reason: str, source: Optional[str] = None):
        where = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{where}: {reason}")
        self.line = line
        self.reason = reason


class MonotonicityError(ParseError):
    pass


# --- hyperspace / configuration -----------------------------------------

class InvalidConfig(UserError):
    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class InvalidPoint(InvalidConfig):
    pass


# --- bayesopt -----------------------------------------------------------

class SingularKernel(IrTuneError):
    pass


class ObjectiveError(IrTuneError):
    pass
