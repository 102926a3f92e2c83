"""Exception hierarchy shared across the pipeline."""


class TracefixError(Exception):
    """Base class for all tool errors."""


class UnsupportedLanguage(TracefixError):
    pass


class ParseFailure(TracefixError):
    pass


class EmptyBody(TracefixError):
    pass


class InvalidContext(TracefixError):
    pass


class MalformedReply(TracefixError):
    pass


class RuleInstrumentationFailure(TracefixError):
    pass


class InstrumentationUnavailable(TracefixError):
    pass


class GatewayAuthError(TracefixError):
    pass


class GatewayUnavailable(TracefixError):
    pass


class ScriptExhausted(TracefixError):
    pass


class EmptyTrace(TracefixError):
    pass


class BugSpecError(TracefixError):
    pass
