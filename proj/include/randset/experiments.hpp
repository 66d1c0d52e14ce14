#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "randset/distance.hpp"
#include "randset/experiment.hpp"
#include "randset/face.hpp"
#include "randset/mean_process.hpp"
#include "randset/random_set.hpp"
#include "randset/rng.hpp"
#include "randset/shapley_folkman.hpp"
#include "randset/stats.hpp"

namespace randset {

/// Significance level of every Kolmogorov-Smirnov verdict.
inline constexpr double kKsAlpha = 0.01;
/// Relative tolerance on variances predicted by the tangent and facet limit laws.
inline constexpr double kVarianceRelTol = 0.10;
/// Largest acceptable fraction of replications with a degenerate exposed face.
inline constexpr double kMaxDegenerateFraction = 0.001;

struct ExposedOptions {
    /// Entrywise tolerance between empirical and predicted covariance.
    double covariance_tolerance = 0.03;
};

namespace detail {

inline std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

inline std::string join(const Vector& v) {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
    return s;
}

inline std::string at_n(const std::string& name, long long n) { return name + "@N=" + std::to_string(n); }

inline std::vector<double> to_values(const Vector& v) { return {v.data(), v.data() + v.size()}; }

// Index of the atom drawn at step `draw` of replication `rep`.
inline std::size_t draw_atom(const DiscreteRandomSet& y, std::uint64_t seed, long long rep, long long draw) {
    return y.sample(uniform_draw(seed, static_cast<std::uint64_t>(rep), static_cast<std::uint64_t>(draw)));
}

// Drives one replication: draws atoms in order, calls `step(atom)` after each
// draw and `checkpoint(n)` whenever n is one of the configured sample sizes.
template <typename Step, typename Checkpoint>
void drive(const DiscreteRandomSet& y, const ExperimentConfig& config, long long rep, Step&& step,
           Checkpoint&& checkpoint) {
    std::size_t next = 0;
    for (long long i = 0; i < config.max_size(); ++i) {
        step(draw_atom(y, config.master_seed, rep, i));
        if (i + 1 == config.sample_sizes[next]) {
            checkpoint(i + 1);
            ++next;
        }
    }
}

template <typename Fn>
ExperimentReport finish(ExperimentReport report, const ExperimentConfig& config, Fn&& per_replication) {
    const auto started = std::chrono::steady_clock::now();
    auto groups = run_replications<std::vector<Record>>(config.replications, config.threads, per_replication);
    for (auto& g : groups) {
        for (auto& r : g) report.records.push_back(std::move(r));
    }
    report.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

inline ExperimentReport start(std::string kind, const ExperimentConfig& config, std::vector<std::string> stat_names) {
    config.validate();
    ExperimentReport report;
    report.kind = std::move(kind);
    report.config = config;
    report.stat_names = std::move(stat_names);
    return report;
}

// Verdicts shared by the scalar normal limit laws: variance against the
// prediction and a KS normality test, or exact degeneracy when the predicted
// variance vanishes.
inline void scalar_normal_verdicts(ExperimentReport& report, long long n, const std::vector<double>& values,
                                   double predicted_variance, double degenerate_bound, bool degenerate_is_variance) {
    if (values.size() < 2) return;
    const auto mv = stats::mean_and_variance(values);
    report.metrics.push_back({at_n("mean", n), mv.mean});
    report.metrics.push_back({at_n("variance", n), mv.variance});
    if (predicted_variance > 0.0) {
        const double rel = std::abs(mv.variance - predicted_variance) / predicted_variance;
        report.verdicts.push_back({at_n("variance_within_10pct", n), rel <= kVarianceRelTol,
                                   "empirical " + num(mv.variance) + " vs predicted " + num(predicted_variance)});
        if (values.size() >= 20) {
            const auto ks = stats::ks_test_normal(values, 0.0, std::sqrt(predicted_variance));
            report.metrics.push_back({at_n("ks_D", n), ks.statistic});
            report.metrics.push_back({at_n("ks_p", n), ks.p_value});
            report.verdicts.push_back({at_n("ks_normal", n), ks.p_value > kKsAlpha,
                                       "D=" + num(ks.statistic) + " p=" + num(ks.p_value)});
        }
    } else if (degenerate_is_variance) {
        report.verdicts.push_back({at_n("degenerate_variance", n), mv.variance <= degenerate_bound,
                                   "empirical variance " + num(mv.variance)});
    } else {
        double worst = 0.0;
        for (double v : values) worst = std::max(worst, std::abs(v));
        report.verdicts.push_back({at_n("degenerate_zero", n), worst <= degenerate_bound, "max |stat| " + num(worst)});
    }
}

}  // namespace detail

/// Set-valued law of large numbers: records H(mean of N draws, E Y).
inline ExperimentReport lln_experiment(const DiscreteRandomSet& y, const ExperimentConfig& config) {
    ExperimentReport report = detail::start("lln", config, {"stat"});
    const ConvexBody ey = expectation(y);
    double ceiling = 0.0;
    for (const auto& a : y.atoms()) ceiling = std::max(ceiling, hausdorff(a.body, ey));

    report = detail::finish(std::move(report), config, [&](long long rep) {
        std::vector<Record> out;
        MeanProcessState state;
        detail::drive(
            y, config, rep, [&](std::size_t j) { state = mean_process_extend(state, y.atom(j).body); },
            [&](long long n) { out.push_back({rep, n, {hausdorff(state.mean(), ey)}}); });
        return out;
    });

    double worst = 0.0;
    for (const auto& r : report.records) worst = std::max(worst, r.stats[0] - ceiling);
    report.verdicts.push_back({"hausdorff_within_atom_ceiling", worst <= 1e-9 * ey.tolerance_scale(),
                               "ceiling max_j H(K_j, EY) = " + detail::num(ceiling)});

    std::vector<double> ns;
    std::vector<double> medians;
    bool positive = true;
    for (long long n : config.sample_sizes) {
        const double med = stats::median(report.column(n));
        report.metrics.push_back({detail::at_n("median_hausdorff", n), med});
        ns.push_back(static_cast<double>(n));
        medians.push_back(med);
        positive = positive && med > 0.0;
    }
    if (ns.size() >= 3 && positive) {
        const auto fit = stats::loglog_slope(ns, medians);
        report.metrics.push_back({"loglog_slope", fit.slope});
        report.metrics.push_back({"loglog_intercept", fit.intercept});
        report.verdicts.push_back({"loglog_slope_near_minus_half", fit.slope >= -0.65 && fit.slope <= -0.35,
                                   "slope " + detail::num(fit.slope) + " expected in [-0.65, -0.35]"});
    }
    return report;
}

/// sqrt(N) H(mean, E Y); consecutive sample sizes are compared with a
/// two-sample KS test as a stability surrogate for the limit law.
inline ExperimentReport clt_hausdorff_experiment(const DiscreteRandomSet& y, const ExperimentConfig& config) {
    if (config.sample_sizes.size() < 2) throw InvalidArgument("clt-hausdorff needs at least two sample sizes");
    ExperimentReport report = detail::start("clt-hausdorff", config, {"stat"});
    const ConvexBody ey = expectation(y);

    report = detail::finish(std::move(report), config, [&](long long rep) {
        std::vector<Record> out;
        MeanProcessState state;
        detail::drive(
            y, config, rep, [&](std::size_t j) { state = mean_process_extend(state, y.atom(j).body); },
            [&](long long n) {
                out.push_back({rep, n, {std::sqrt(static_cast<double>(n)) * hausdorff(state.mean(), ey)}});
            });
        return out;
    });

    bool nonnegative = true;
    for (const auto& r : report.records) nonnegative = nonnegative && r.stats[0] >= 0.0;
    report.verdicts.push_back({"nonnegative", nonnegative, ""});
    for (long long n : config.sample_sizes) {
        report.metrics.push_back({detail::at_n("median_scaled_hausdorff", n), stats::median(report.column(n))});
    }
    if (config.replications >= 20) {
        for (std::size_t i = 0; i + 1 < config.sample_sizes.size(); ++i) {
            const long long a = config.sample_sizes[i];
            const long long b = config.sample_sizes[i + 1];
            const auto ks = stats::ks_two_sample(report.column(a), report.column(b));
            const std::string tag = std::to_string(a) + "_vs_" + std::to_string(b);
            report.metrics.push_back({"ks2_D@" + tag, ks.statistic});
            report.metrics.push_back({"ks2_p@" + tag, ks.p_value});
            report.verdicts.push_back({"ks2_stable@" + tag, ks.p_value > kKsAlpha,
                                       "D=" + detail::num(ks.statistic) + " p=" + detail::num(ks.p_value)});
        }
    }
    return report;
}

/// Exposed-point CLT: sqrt(N)(y_N - k), with y_N the point of the sample mean
/// exposed by f and k the point of E Y exposed by f.
inline ExperimentReport clt_exposed_experiment(const DiscreteRandomSet& y, const Vector& f,
                                               const ExperimentConfig& config, const ExposedOptions& options = {}) {
    const Selection sel = exposed_selection(y, f);
    const auto d = y.dim();
    std::vector<std::string> names;
    for (Eigen::Index i = 0; i < d; ++i) names.push_back("stat_" + std::to_string(i));
    ExperimentReport report = detail::start("clt-exposed", config, names);
    report.parameters.push_back({"direction", detail::to_values(Direction(f).coords())});
    report.parameters.push_back({"exposed_point", detail::to_values(sel.mean)});

    struct Outcome {
        std::vector<Record> records;
        bool degenerate = false;
    };
    const auto started = std::chrono::steady_clock::now();
    auto outcomes = run_replications<Outcome>(config.replications, config.threads, [&](long long rep) {
        Outcome out;
        MeanProcessState state;
        Vector selected_sum = Vector::Zero(d);
        detail::drive(
            y, config, rep,
            [&](std::size_t j) {
                state = mean_process_extend(state, y.atom(j).body);
                selected_sum += sel.points[j];
            },
            [&](long long n) {
                if (out.degenerate) return;
                const ConvexBody mean = state.mean();
                const FaceCertificate cert = support_face(mean, f);
                if (!cert.is_exposed) {
                    out.degenerate = true;
                    return;
                }
                const Vector& yn = cert.face.vertices().front();
                // The face of the mean is the mean of the per-draw faces.
                const Vector via_draws = selected_sum / static_cast<double>(n);
                if ((yn - via_draws).norm() > 1e-9 * mean.tolerance_scale()) {
                    throw GeometryError("exposed point of the sample mean differs from the mean of exposed points");
                }
                out.records.push_back({rep, n, detail::to_values(std::sqrt(static_cast<double>(n)) * (yn - sel.mean))});
            });
        if (out.degenerate) out.records.clear();
        return out;
    });
    for (auto& o : outcomes) {
        if (o.degenerate) ++report.discarded;
        for (auto& r : o.records) report.records.push_back(std::move(r));
    }
    report.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const double degenerate_fraction = static_cast<double>(report.discarded) / static_cast<double>(config.replications);
    report.metrics.push_back({"discarded_replications", static_cast<double>(report.discarded)});
    if (degenerate_fraction > kMaxDegenerateFraction) {
        throw DegenerateFace(std::to_string(report.discarded) + " of " + std::to_string(config.replications) +
                             " replications produced a non-singleton exposed face");
    }

    const Eigen::SelfAdjointEigenSolver<Matrix> eig(sel.covariance);
    const double trace = sel.covariance.trace();
    for (long long n : config.sample_sizes) {
        std::vector<Vector> sample;
        for (const auto& r : report.records) {
            if (r.n == n) sample.push_back(make_vector(std::span<const double>(r.stats)));
        }
        if (sample.size() < 2) continue;
        const auto mc = stats::mean_and_covariance(sample);
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                report.metrics.push_back({detail::at_n("cov_" + std::to_string(i) + std::to_string(j), n), mc.cov(i, j)});
            }
        }
        const double cov_err = (mc.cov - sel.covariance).cwiseAbs().maxCoeff();
        report.verdicts.push_back({detail::at_n("covariance_entrywise", n), cov_err <= options.covariance_tolerance,
                                   "max entry error " + detail::num(cov_err) + " (tolerance " +
                                       detail::num(options.covariance_tolerance) + ")"});
        const double mean_bound = trace > 0.0 ? 4.0 * std::sqrt(trace / static_cast<double>(sample.size())) : 1e-9;
        report.verdicts.push_back({detail::at_n("mean_near_zero", n), mc.mean.norm() <= mean_bound,
                                   "|mean| " + detail::num(mc.mean.norm()) + " bound " + detail::num(mean_bound)});
        for (Eigen::Index e = 0; e < d; ++e) {
            const double lambda = eig.eigenvalues()[e];
            const Vector axis = eig.eigenvectors().col(e);
            std::vector<double> proj;
            for (const auto& v : sample) proj.push_back(axis.dot(v));
            const std::string tag = "axis" + std::to_string(e);
            if (lambda > 1e-12) {
                if (proj.size() >= 20) {
                    const auto ks = stats::ks_test_normal(proj, 0.0, std::sqrt(lambda));
                    report.metrics.push_back({detail::at_n("ks_p_" + tag, n), ks.p_value});
                    report.verdicts.push_back({detail::at_n("ks_normal_" + tag, n), ks.p_value > kKsAlpha,
                                               "eigenvalue " + detail::num(lambda) + " D=" + detail::num(ks.statistic) +
                                                   " p=" + detail::num(ks.p_value)});
                }
            } else {
                double worst = 0.0;
                for (double p : proj) worst = std::max(worst, std::abs(p));
                report.verdicts.push_back({detail::at_n("null_axis_zero_" + tag, n), worst <= 1e-6,
                                           "max |projection| " + detail::num(worst)});
            }
        }
    }
    return report;
}

/// Tangent-plane CLT: stat_0 = N^{-1/2} sum_i (s_{Y_i}(u) - s_{EY}(u));
/// stat_1 = H(mean of the per-draw faces, face of E Y).
inline ExperimentReport clt_tangent_experiment(const DiscreteRandomSet& y, const Vector& u,
                                               const ExperimentConfig& config) {
    const Direction dir(u);
    const ConvexBody ey = expectation(y);
    const double s_ey = support(ey, dir.coords());
    const double sigma2 = tangent_variance(y, u);
    const ConvexBody face_ey = support_face(ey, u).face;
    std::vector<double> atom_support;
    std::vector<ConvexBody> atom_face;
    for (const auto& a : y.atoms()) {
        atom_support.push_back(support(a.body, dir.coords()));
        atom_face.push_back(support_face(a.body, u).face);
    }
    ExperimentReport report = detail::start("clt-tangent", config, {"stat_0", "stat_1"});
    report.parameters.push_back({"direction", detail::to_values(dir.coords())});
    report.metrics.push_back({"predicted_variance", sigma2});

    report = detail::finish(std::move(report), config, [&](long long rep) {
        std::vector<Record> out;
        MeanProcessState bodies;
        MeanProcessState faces;
        double support_sum = 0.0;
        detail::drive(
            y, config, rep,
            [&](std::size_t j) {
                bodies = mean_process_extend(bodies, y.atom(j).body);
                faces = mean_process_extend(faces, atom_face[j]);
                support_sum += atom_support[j];
            },
            [&](long long n) {
                const double nn = static_cast<double>(n);
                const ConvexBody& sum = bodies.running_sum();
                const double residual = hausdorff(support_face(sum, u).face, faces.running_sum());
                if (residual > 1e-9 * sum.tolerance_scale()) {
                    throw GeometryError("face of the running sum differs from the sum of faces by " +
                                        detail::num(residual));
                }
                out.push_back(
                    {rep, n, {(support_sum - nn * s_ey) / std::sqrt(nn), hausdorff(faces.mean(), face_ey)}});
            });
        return out;
    });

    for (long long n : config.sample_sizes) {
        detail::scalar_normal_verdicts(report, n, report.column(n, 0), sigma2, 1e-9 * ey.tolerance_scale(), false);
        const auto face_gap = report.column(n, 1);
        double mean_gap = 0.0;
        for (double g : face_gap) mean_gap += g / static_cast<double>(face_gap.size());
        report.metrics.push_back({detail::at_n("mean_face_hausdorff", n), mean_gap});
    }
    if (config.sample_sizes.size() >= 2) {
        const double first = report.metric(detail::at_n("mean_face_hausdorff", config.sample_sizes.front()))->value;
        const double last = report.metric(detail::at_n("mean_face_hausdorff", config.sample_sizes.back()))->value;
        report.verdicts.push_back({"face_hausdorff_shrinks", last <= first + 1e-12,
                                   detail::num(first) + " -> " + detail::num(last)});
    }
    return report;
}

/// Facet CLT: sqrt(N)(d(x, mean) - d(x, E Y)) for x outside E Y whose nearest
/// point lies in a facet.
inline ExperimentReport clt_facet_experiment(const DiscreteRandomSet& y, const Vector& x,
                                             const ExperimentConfig& config) {
    const ConvexBody ey = expectation(y);
    const double d0 = point_distance(ey, x);
    if (d0 <= 1e-9 * ey.tolerance_scale()) throw InsideBody("query point lies in E Y");
    const NearestSelection ns = nearest_point_selection(y, x);
    if (!ns.compatible) {
        throw IncompatibleSelection("mean of the per-atom nearest points (" + detail::join(ns.selection.mean) +
                                    ") differs from the nearest point of E Y (" + detail::join(ns.body_nearest) + ")");
    }
    const Vector& k = ns.body_nearest;
    const Direction hb = norm_gradient(k - x);
    if (!is_facet_at(ey, k, Vector(-hb.coords()))) throw NoFacet("nearest point of E Y is not contained in a facet");
    const double predicted = hb.coords().dot(ns.selection.covariance * hb.coords());

    ExperimentReport report = detail::start("clt-facet", config, {"stat"});
    report.parameters.push_back({"point", detail::to_values(x)});
    report.parameters.push_back({"nearest_point", detail::to_values(k)});
    report.parameters.push_back({"normal", detail::to_values(hb.coords())});
    report.metrics.push_back({"distance_to_expectation", d0});
    report.metrics.push_back({"predicted_variance", predicted});

    struct Outcome {
        std::vector<Record> records;
        long long excursions = 0;
    };
    const auto started = std::chrono::steady_clock::now();
    auto outcomes = run_replications<Outcome>(config.replications, config.threads, [&](long long rep) {
        Outcome out;
        MeanProcessState state;
        detail::drive(
            y, config, rep, [&](std::size_t j) { state = mean_process_extend(state, y.atom(j).body); },
            [&](long long n) {
                const ConvexBody mean = state.mean();
                const Vector kn = nearest_point(mean, x);
                const double dn = (x - kn).norm();
                // Leaving the facet's neighbourhood shows up as a tilted normal.
                if (dn == 0.0 || (Direction(kn - x).coords() - hb.coords()).norm() > 1e-9) ++out.excursions;
                out.records.push_back({rep, n, {std::sqrt(static_cast<double>(n)) * (dn - d0)}});
            });
        return out;
    });
    long long excursions = 0;
    for (auto& o : outcomes) {
        excursions += o.excursions;
        for (auto& r : o.records) report.records.push_back(std::move(r));
    }
    report.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    report.metrics.push_back({"facet_excursions", static_cast<double>(excursions)});
    for (long long n : config.sample_sizes) {
        detail::scalar_normal_verdicts(report, n, report.column(n), predicted, 1e-3, true);
    }
    return report;
}

/// Frequency with which the sample mean has a face of affine dimension >= 1 in
/// direction f, against 1 - (1 - p)^N.
inline ExperimentReport facet_frequency_experiment(const DiscreteRandomSet& y, const Vector& f,
                                                   const ExperimentConfig& config) {
    ExperimentReport report = detail::start("facet-freq", config, {"stat"});
    report.parameters.push_back({"direction", detail::to_values(Direction(f).coords())});
    report = detail::finish(std::move(report), config, [&](long long rep) {
        std::vector<Record> out;
        MeanProcessState state;
        detail::drive(
            y, config, rep, [&](std::size_t j) { state = mean_process_extend(state, y.atom(j).body); },
            [&](long long n) {
                const bool facet = support_face(state.mean(), f).facet_direction.has_value();
                out.push_back({rep, n, {facet ? 1.0 : 0.0}});
            });
        return out;
    });
    for (long long n : config.sample_sizes) {
        const FacetInheritance fi = facet_inheritance(y, f, n);
        long long hits = 0;
        for (double v : report.column(n)) hits += v > 0.5 ? 1 : 0;
        report.metrics.push_back({"p_facet", fi.p_facet});
        report.metrics.push_back({detail::at_n("predicted_frequency", n), fi.prob_n});
        report.metrics.push_back(
            {detail::at_n("empirical_frequency", n), static_cast<double>(hits) / static_cast<double>(config.replications)});
        report.verdicts.push_back({detail::at_n("binomial_3sigma", n), stats::binomial_band(config.replications, fi.prob_n, hits),
                                   std::to_string(hits) + " of " + std::to_string(config.replications) + " vs p=" +
                                       detail::num(fi.prob_n)});
    }
    return report;
}

struct ConvexificationReport {
    std::vector<long long> sizes;
    std::vector<ShapleyFolkmanGap> gaps;
    std::vector<Verdict> verdicts;

    bool passed() const {
        return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
    }
};

/// Shapley-Folkman gaps over the first N sets, for each N in `sizes`.
inline ConvexificationReport convexification_check(const std::vector<PointList>& sets, const std::vector<long long>& sizes) {
    if (sets.empty() || sizes.empty()) throw InvalidArgument("convexification_check: empty input");
    ConvexificationReport report;
    for (long long n : sizes) {
        if (n < 1 || static_cast<std::size_t>(n) > sets.size()) {
            throw InvalidArgument("convexification_check: N out of range");
        }
        const std::vector<PointList> prefix(sets.begin(), sets.begin() + n);
        const ShapleyFolkmanGap g = shapley_folkman_gap(prefix);
        report.sizes.push_back(n);
        report.gaps.push_back(g);
        report.verdicts.push_back({detail::at_n("gap_within_bound", n), g.gap_upper <= g.bound,
                                   "gap " + detail::num(g.gap) + " bound " + detail::num(g.bound)});
    }
    if (report.gaps.size() >= 2) {
        const double first = report.gaps.front().gap;
        const double last = report.gaps.back().gap;
        report.verdicts.push_back({"gap_shrinks", last <= first + 1e-12, detail::num(first) + " -> " + detail::num(last)});
    }
    return report;
}

}  // namespace randset
