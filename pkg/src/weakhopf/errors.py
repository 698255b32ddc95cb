"""Exception hierarchy shared by all modules."""


class WeakHopfError(Exception):
    """Base class for every error raised by the package."""


class FieldMismatch(WeakHopfError):
    pass


class DimensionMismatch(WeakHopfError):
    pass


class NotIdempotent(WeakHopfError):
    pass


class InvalidGroupoid(WeakHopfError):
    pass


class NotCocommutative(WeakHopfError):
    pass


class NotCommutative(WeakHopfError):
    pass


class NotStrictModuleAlgebra(WeakHopfError):
    pass


class BadDegree(WeakHopfError):
    pass


class BadIndex(WeakHopfError):
    pass


class DegreeMismatch(WeakHopfError):
    pass


class NotRegular(WeakHopfError):
    pass


class NotNormalized(WeakHopfError):
    pass


class BudgetExceeded(WeakHopfError):
    def __init__(self, required, budget):
        super().__init__(f"enumeration needs {required} candidates, budget is {budget}")
        self.required = required
        self.budget = budget


class ConditionFailed(WeakHopfError):
    """An identity that should hold did not; `label` names it."""

    def __init__(self, label, detail=""):
        super().__init__(f"{label}: {detail}" if detail else label)
        self.label = label


class ValidationError(WeakHopfError):
    def __init__(self, labels):
        labels = list(labels)
        super().__init__("failing axioms: " + ", ".join(labels))
        self.labels = labels


class DslSyntaxError(WeakHopfError):
    def __init__(self, msg, offset):
        super().__init__(f"{msg} at offset {offset}")
        self.offset = offset


class UnboundName(WeakHopfError):
    def __init__(self, name):
        super().__init__(f"unbound name {name!r}")
        self.name = name


class TypeMismatch(WeakHopfError):
    def __init__(self, expected, got, where=""):
        super().__init__(f"type mismatch{(' in ' + where) if where else ''}: {expected} vs {got}")
        self.expected = expected
        self.got = got
