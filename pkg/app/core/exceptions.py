import logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2


class Q0uError(Exception):
    """Base application exception."""

    exit_code: int = EXIT_USAGE
    error_code: str = "INTERNAL_ERROR"

    def __init__(self, message: str, details: object = None) -> None:
        self.message = message
        self.details = details
        super().__init__(message)


# --- Syntax ---


class TypeSyntaxError(Q0uError):
    error_code = "TYPE_SYNTAX"

    def __init__(self, text: str, reason: str) -> None:
        super().__init__(
            f"Invalid type symbol {text!r}: {reason}", details={"text": text, "reason": reason}
        )


class WffSyntaxError(Q0uError):
    error_code = "WFF_SYNTAX"

    def __init__(self, reason: str, position: int, text: str = "") -> None:
        self.position = position
        super().__init__(
            f"{reason} at position {position}",
            details={"position": position, "text": text, "reason": reason},
        )


class UnknownConstantError(Q0uError):
    error_code = "UNKNOWN_CONSTANT"

    def __init__(self, name: str) -> None:
        super().__init__(f"Constant {name!r} is not declared", details={"name": name})


class TypeMismatchError(Q0uError):
    error_code = "TYPE_MISMATCH"


class SignatureError(Q0uError):
    error_code = "SIGNATURE"


class NonCoreWffError(Q0uError):
    error_code = "NON_CORE_WFF"

    def __init__(self, what: str) -> None:
        super().__init__(f"Expected a core wff, found abbreviation {what}")


# --- Substitution / abbreviations ---


class CaptureError(Q0uError):
    error_code = "CAPTURE"

    def __init__(self, replacement: str, variable: str, binder: str) -> None:
        super().__init__(
            f"{replacement} is not free for {variable}: it would be captured by binder {binder}",
            details={"replacement": replacement, "variable": variable, "binder": binder},
        )


class AbbreviationArgumentError(Q0uError):
    error_code = "ABBREVIATION_ARGUMENT"


# --- Kernel ---


class AxiomSideConditionError(Q0uError):
    exit_code = EXIT_REJECTED
    error_code = "AXIOM_SIDE_CONDITION"

    def __init__(self, schema: str, reason: str) -> None:
        super().__init__(
            f"{schema}: {reason}", details={"schema": schema, "reason": reason}
        )


class RuleApplicationError(Q0uError):
    exit_code = EXIT_REJECTED
    error_code = "RULE_APPLICATION"

    def __init__(self, rule: str, reason: str, details: object = None) -> None:
        super().__init__(f"{rule}: {reason}", details=details)


class ExtendedModeRequiredError(Q0uError):
    exit_code = EXIT_REJECTED
    error_code = "EXTENDED_MODE_REQUIRED"

    def __init__(self, rule: str) -> None:
        super().__init__(f"extended-mode rule in kernel mode: {rule}", details={"rule": rule})


class TacticError(Q0uError):
    error_code = "TACTIC"

    def __init__(self, tactic: str, reason: str) -> None:
        super().__init__(f"{tactic}: {reason}", details={"tactic": tactic, "reason": reason})


# --- Semantics ---


class ModelDefinitionError(Q0uError):
    error_code = "MODEL_DEFINITION"


class DomainSizeCapError(Q0uError):
    error_code = "DOMAIN_SIZE_CAP"

    def __init__(self, type_text: str, cardinality: int, cap: int) -> None:
        super().__init__(
            f"Domain of type {type_text} has {cardinality} elements, exceeding the cap of {cap}",
            details={"type": type_text, "cardinality": cardinality, "cap": cap},
        )


class AssignmentError(Q0uError):
    error_code = "ASSIGNMENT"

    def __init__(self, variable: str) -> None:
        super().__init__(
            f"Assignment has no value for free variable {variable}",
            details={"variable": variable},
        )


# --- Scripts ---


class ScriptSyntaxError(Q0uError):
    error_code = "SCRIPT_SYNTAX"

    def __init__(self, line: int, reason: str) -> None:
        self.line = line
        super().__init__(f"line {line}: {reason}", details={"line": line, "reason": reason})


class ScriptReferenceError(Q0uError):
    error_code = "SCRIPT_REFERENCE"


class FileAccessError(Q0uError):
    error_code = "FILE_ACCESS"

    def __init__(self, path: str, reason: str) -> None:
        super().__init__(f"{path}: {reason}", details={"path": path, "reason": reason})


def log_error(exc: Q0uError, **context: object) -> None:
    log_fn = logger.error if exc.exit_code == EXIT_USAGE else logger.warning
    log_fn(
        exc.error_code,
        extra={"error_code": exc.error_code, "exit_code": exc.exit_code, "detail": exc.message}
        | context,
    )
