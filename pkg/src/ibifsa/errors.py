"""Exception types. Each carries the witness that triggered it."""


class IfsaError(ValueError):
    """Base class for all validation and input errors."""


class EmptyCarrier(IfsaError):
    pass


class DocumentError(IfsaError):
    pass


# group axioms

class NotClosed(IfsaError):
    def __init__(self, row, col, value):
        self.witness = (row, col, value)
        super().__init__(f"table[{row}][{col}] = {value!r} is not an element")


class NoIdentity(IfsaError):
    def __init__(self):
        super().__init__("no two-sided identity element")


class NoInverse(IfsaError):
    def __init__(self, element):
        self.witness = element
        super().__init__(f"element {element} has no inverse")


class NotAssociative(IfsaError):
    def __init__(self, r, s, t):
        self.witness = (r, s, t)
        super().__init__(f"(r*s)*t != r*(s*t) for (r, s, t) = {(r, s, t)}")


class TooLarge(IfsaError):
    pass


class NotHomomorphism(IfsaError):
    def __init__(self, x, y):
        self.witness = (x, y)
        super().__init__(f"f(x*y) != f(x)*f(y) for (x, y) = {(x, y)}")


# fuzzy subsets and machines

class LengthMismatch(IfsaError):
    pass


class ConsistencyViolation(IfsaError):
    def __init__(self, where, mu, nu):
        self.witness = where
        super().__init__(f"mu + nu = {mu} + {nu} > 1 at {where}")


class CarrierMismatch(IfsaError):
    pass


class ShapeMismatch(IfsaError):
    pass


class LambdaOutOfRange(IfsaError):
    pass


class UnknownSymbol(IfsaError):
    pass


class UnknownState(IfsaError):
    pass


class GridTooLarge(IfsaError):
    def __init__(self, count, cap):
        self.count = count
        self.cap = cap
        super().__init__(f"grid has {count} instances, cap is {cap}")
