"""Exception hierarchy.

The CLI maps the three top-level families onto exit codes:
ConfigError -> 2, InputError -> 3, NumericError -> 4.
"""


class IvwsnError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(IvwsnError):
    """Bad or inconsistent configuration."""


class InputError(IvwsnError):
    """Malformed input data (CSV files, node specs, traces)."""


class NumericError(IvwsnError):
    """A numerical procedure failed."""


class ParseError(InputError):
    def __init__(self, message, row=None, path=None):
        self.row = row
        self.path = path
        where = []
        if path is not None:
            where.append(str(path))
        if row is not None:
            where.append(f"row {row}")
        prefix = ": ".join([", ".join(where), ""]) if where else ""
        super().__init__(prefix + message)


class NonUniformTrace(InputError):
    pass


class NonMonotonicTime(NonUniformTrace):
    pass


class ExcessiveJitter(NonUniformTrace):
    pass


class DistanceBelowReference(ValueError, InputError):
    pass


class MissingTableEntry(KeyError, ConfigError):
    def __str__(self):
        return Exception.__str__(self)


class MissingModel(KeyError, ConfigError):
    def __str__(self):
        return Exception.__str__(self)


class SuppressionNotSupported(ConfigError):
    pass


class EmptySeries(ValueError, InputError):
    pass


class TimestampMismatch(ValueError, InputError):
    pass


class NoLinksForCompartment(InputError):
    pass


class UnstableIntegration(NumericError):
    pass
