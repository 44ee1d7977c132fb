"""FDR-controlled multiple testing when the null must be learned from the data.

The package bundles four pieces around the plug-in Benjamini-Hochberg
procedure with robust location/scale rescaling:

* ``dist``       high-accuracy tails/quantiles for the Gaussian, Subbotin,
                 and Laplace null families, plus tabulated cdfs;
* ``testing``    rescaled p-values, the step-up procedure, FDP/TDP;
* ``scaling``    the median / MAD / trimmed-mean plug-in estimators;
* ``mixtures``   least-favorable two-group constructions that make the null
                 unidentifiable, with exact samplers;
* ``confidence`` a nonparametric confidence superset for the null cdf,
                 goodness-of-fit tests, and the scaling-region heatmap;
* ``simulate``   a reproducible replication harness over dependence and
                 alternative structures;
* ``cli``        a file-based command-line front end (``fdrlab``).
"""

__version__ = "0.1.0"

from .confidence import (RegionGrid, RegionSpec, default_region_spec, dkw_constant,
                         envelope_bounds, gof_test_family, gof_test_single,
                         model_region_scan, null_in_region, scaling_region_scan)
from .dist import (NullModel, gaussian_model, gaussian_pdf, gaussian_quantile,
                   gaussian_tail, laplace_model, laplace_pdf, laplace_quantile,
                   laplace_tail, subbotin_model, subbotin_pdf, subbotin_quantile,
                   subbotin_tail, tabulated_model)
from .mixtures import (MixtureInstance, NoRootError, boundary_constants,
                       general_location_mixture, laplace_inflation, sample_f1,
                       sample_f2, sample_mixture, sample_two_group,
                       solve_location_mixture, solve_variance_mixture)
from .scaling import (Scaling, estimate_scaling, mad_estimate, median_estimate,
                      trimmed_mean_estimate)
from .simulate import (MetricsReport, ScenarioConfig, adversarial_location_experiment,
                       estimate_criteria, generate_dataset, replication_rng,
                       run_experiment, sample_zero_located, std_cauchy, std_normal,
                       zero_located_sigma)
from .testing import (DegenerateScaleError, PValueVector, RejectionSet, Sample,
                      as_sample, bh_from_pvalues, bh_procedure, bh_threshold, fdp,
                      perturbation_envelope, rescaled_pvalues, tdp)

__all__ = [name for name in dir() if not name.startswith("_")]
