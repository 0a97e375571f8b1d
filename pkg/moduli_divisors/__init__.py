"""Moduli Divisors Package

Exact rational divisor classes on moduli spaces of pointed curves and their
finite quotients, with a catalog of effective divisors and a certificate
solver deciding when a canonical class is big.

Modules:
- core: Contexts, Picard group bases, configuration and table orchestration
- tools: Pullback maps, the generator catalog, the certificate solver and ages
- campaigns: Grid campaigns and the reference tables they are compared with
- utils: Command-line interface and the batch runner
"""

from moduli_divisors.core.picard_basis import DivisorClass, orbit_basis
from moduli_divisors.core.state import SpaceContext, TableName, Verdict
from moduli_divisors.core.workflow import run_workflow

__version__ = "0.1.0"
__all__ = ["DivisorClass", "SpaceContext", "TableName", "Verdict", "orbit_basis", "run_workflow"]
