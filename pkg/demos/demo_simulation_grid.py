"""A compact sweep of the replication harness across sparsity and dependence.

For each scenario the oracle and the two robust plug-ins run at level
alpha / pi0; the printed FDR/TDR table shows plug-ins mimicking the oracle
at low sparsity, beating it under equicorrelation (they learn the
conditional null), and breaking down once contamination reaches 30%.
"""

from fdrlab import ScenarioConfig, run_experiment

methods = ("oracle", "median_mad", "trim_mad")
alpha = 0.2

print(f"{'scenario':<38} {'method':<12} {'FDR':>6} {'TDR':>6}")
for corr in ("independent", "equicorrelated"):
    for k in (30, 300):
        cfg = ScenarioConfig(n=1000, k=k, correlation=corr, alternative="standard",
                             alpha_list=(alpha,), n_replications=100, seed=1234)
        rep = run_experiment(cfg, methods)
        for m in methods:
            row = rep.row(m, alpha)
            label = f"{corr}, k={k}"
            print(f"{label:<38} {m:<12} {row['fdr']:>6.3f} {row['tdr']:>6.3f}")
    print()

print("Note the equicorrelated k=30 rows: the plug-ins' TDR exceeds the")
print("oracle's because the estimators adapt to the factor-conditional null.")
