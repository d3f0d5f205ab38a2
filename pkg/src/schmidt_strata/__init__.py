"""Schmidt-rank strata of bipartite pure states: charts, embeddings, orbits, dimensions."""

from .charts import (
    GrassmannChartPoint,
    ProjectiveMatrixPoint,
    StratumPoint,
    grassmann_from_span,
    is_on_hypersurface,
    random_stratum_point,
    stratum_complex_dimension,
)
from .embedding import embed, roundtrip_fidelity, to_stratum_point
from .errors import *  # noqa: F401,F403
from .geometry import (
    ChartPoint,
    DimensionCertificate,
    MetricMode,
    certify_density_stratum_dimension,
    certify_orbit_dimension,
    certify_stratum_dimension,
    density_stratum_dimension,
    metric_tensor,
)
from .lemma import LemmaCertificate, recover_change_of_basis
from .orbits import (
    OrbitPoint,
    OrbitSpec,
    orbit_point_to_state,
    orbit_real_dimension,
    same_orbit,
    sample_orbit_point,
)
from .states import (
    PureState,
    SchmidtDecomposition,
    TensorExpression,
    length,
    sample_state,
    schmidt_decompose,
)

__version__ = "0.1.0"
