from epsiverse.config import ResourceLimits, raise_recursion_limit

raise_recursion_limit(ResourceLimits())
