"""Exception types shared across the package."""


class DocumentError(ValueError):
    """A JSON document or a set literal could not be parsed or validated."""


class NoSolutionError(ValueError):
    """The requested operation has no defined result for these inputs.

    Raised when a rule's applicability condition fails: conditioning on a set
    with zero plausibility under a normalized rule, normalizing a totally
    conflicting mass function, combining flatly contradicting evidence, or
    asking for a conditional that is undefined over the whole credal set.
    """
