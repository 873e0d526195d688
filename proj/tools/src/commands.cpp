#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <vector>

#include "qcm/convex_roof.hpp"
#include "qcm/errors.hpp"
#include "qcm/monotones.hpp"
#include "qcm/random.hpp"
#include "qcm/red_sim.hpp"
#include "qcm/rpbes.hpp"
#include "state_io.hpp"

namespace qcm::cli {

namespace {

using io::ojson;

/// RNG stream ids per consumer, so commands never share draws.
constexpr std::uint64_t kStreamLinks = 1;
constexpr std::uint64_t kStreamKraus = 2;
constexpr std::uint64_t kStreamSelftest = 100;

int emit(const RunConfig& cfg, const ojson& doc, int code) {
    const std::string text = doc.dump(2) + "\n";
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.output);
        if (!out)
            throw validation_error("cannot write output file: " + cfg.output);
        out << text;
    }
    return code;
}

ConcurrencePath parse_path(const std::string& name) {
    if (name.empty() || name == "auto")
        return ConcurrencePath::Auto;
    if (name == "schmidt")
        return ConcurrencePath::Schmidt;
    if (name == "compound")
        return ConcurrencePath::Compound;
    if (name == "power-sum")
        return ConcurrencePath::PowerSum;
    throw validation_error("unknown path \"" + name +
                           "\" (expected schmidt, compound, power-sum, or auto)");
}

MonotoneSelector parse_monotone(const std::string& name, int d) {
    if (name.empty() || name == "g")
        return MonotoneSelector::g();
    if (name.size() >= 2 && name.front() == 'c') {
        const int k = std::atoi(name.c_str() + 1);
        if (k >= 1 && k <= d)
            return MonotoneSelector::c(k);
    }
    throw validation_error("unknown monotone \"" + name +
                           "\" (expected g or c<k> with k in [1, " +
                           std::to_string(d) + "])");
}

RealMatrix load_real_matrix(const io::json& j, const std::string& at) {
    if (!j.is_array() || j.empty())
        throw validation_error(at + ": expected an array of rows");
    const int n = static_cast<int>(j.size());
    RealMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
        const std::string rat = at + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != n)
            throw validation_error(rat + ": expected " + std::to_string(n) +
                                   " numbers (square matrix)");
        for (int c = 0; c < n; ++c) {
            if (!j[r][c].is_number())
                throw validation_error(rat + "[" + std::to_string(c) +
                                       "]: expected a number");
            m(r, c) = j[r][c].get<double>();
        }
    }
    return m;
}

} // namespace

int cmd_monotones(const RunConfig& cfg, const std::string& state_path,
                  const std::string& path_name) {
    const ConcurrencePath path = parse_path(path_name);
    const PureState state = io::load_pure(io::load_json_file(state_path));
    const int d = std::min(state.dim_a, state.dim_b);

    const MonotoneVector mv = monotone_vector(state, path);
    const RealVector spectrum = schmidt_spectrum(state);

    ojson doc;
    doc["command"] = "monotones";
    doc["dim_a"] = state.dim_a;
    doc["dim_b"] = state.dim_b;
    doc["d"] = d;
    doc["path"] = path_name.empty() ? "auto" : path_name;
    doc["monotones"] = io::spectrum_to_json(mv.values);
    doc["g_concurrence"] = g_concurrence(state);
    doc["schmidt_spectrum"] = io::spectrum_to_json(spectrum);
    doc["log_base"] = cfg.log_base;
    doc["entropy"] = entropy_entanglement(state, cfg.log_base);
    if (d == 2)
        doc["entropy_closed_form"] = entropy_from_c2_d2(mv.values(1), cfg.log_base);
    else if (d == 3)
        doc["entropy_closed_form"] =
            entropy_from_c23_d3(mv.values(1), mv.values(2), cfg.log_base);
    doc["provenance"] = "exact-formula";
    return emit(cfg, doc, kExitOk);
}

int cmd_rpbes(const RunConfig& cfg, const std::string& spectra_path,
              double target_g, bool has_target) {
    const io::json j = io::load_json_file(spectra_path);
    if (!j.is_object())
        throw validation_error("spectra file: expected an object");
    if (!j.contains("lambda") || !j.contains("eta"))
        throw validation_error("spectra file: needs \"lambda\" and \"eta\" arrays");
    const RealVector lambda = io::load_spectrum(j["lambda"], "lambda");
    const RealVector eta = io::load_spectrum(j["eta"], "eta");
    const int d = static_cast<int>(lambda.size());

    ojson doc;
    doc["command"] = "rpbes";
    doc["d"] = d;
    doc["lambda"] = io::spectrum_to_json(lambda);
    doc["eta"] = io::spectrum_to_json(eta);

    rpbes::PhaseMatrix phases = rpbes::PhaseMatrix::canonical(d);
    if (has_target) {
        const rpbes::PhaseDesign design =
            rpbes::design_phases(lambda, eta, target_g, std::max(cfg.tol, 1e-12));
        phases = design.phases;
        doc["target_g"] = target_g;
        doc["alpha"] = design.alpha;
    } else if (j.contains("phases")) {
        const RealMatrix theta = load_real_matrix(j["phases"], "phases");
        if (theta.rows() != d)
            throw validation_error("phases: must be d x d");
        phases = rpbes::PhaseMatrix{theta};
    } else {
        double alpha = 1.0;
        if (j.contains("alpha")) {
            if (!j["alpha"].is_number())
                throw validation_error("alpha: expected a number");
            alpha = j["alpha"].get<double>();
        }
        phases = rpbes::PhaseMatrix::scaled_canonical(d, alpha);
        doc["alpha"] = alpha;
    }

    const rpbes::ProtocolResult res = rpbes::run_protocol(lambda, eta, phases);

    double max_prob_dev = 0.0;
    double min_fidelity = 1.0;
    const double uniform = 1.0 / (static_cast<double>(d) * d);
    for (const rpbes::Outcome& out : res.outcomes) {
        max_prob_dev = std::max(max_prob_dev, std::abs(out.probability - uniform));
        min_fidelity =
            std::min(min_fidelity, overlap_fidelity(out.corrected, res.final_state));
    }

    doc["g12"] = res.g12;
    doc["g34"] = res.g34;
    doc["g_final"] = res.g14;
    doc["saturation_gap"] = res.g12 * res.g34 - res.g14;
    doc["outcome_probability"] = uniform;
    doc["max_probability_deviation"] = max_prob_dev;
    doc["min_branch_fidelity"] = min_fidelity;
    doc["c2_final"] = rpbes::c2_final(lambda, eta, phases);
    doc["c2_normalized"] = concurrence_k(res.final_state, 2);
    doc["c2_factor"] = rpbes::c2_final_normalization(d);
    doc["provenance"] = "exact-formula";
    return emit(cfg, doc, kExitOk);
}

int cmd_roof(const RunConfig& cfg, const std::string& state_path,
             const std::string& monotone) {
    const io::LoadedState loaded = io::load_state(io::load_json_file(state_path));
    const int d = std::min(loaded.dim_a, loaded.dim_b);
    const MonotoneSelector sel = parse_monotone(monotone, d);

    RoofOptions opts;
    opts.restarts = cfg.restarts;
    opts.seed = cfg.seed;
    const DensityMatrix rho = loaded.as_density();
    const RoofResult res = roof_minimize(rho, loaded.dim_a, loaded.dim_b, sel, opts);

    ojson doc;
    doc["command"] = "roof";
    doc["dim_a"] = loaded.dim_a;
    doc["dim_b"] = loaded.dim_b;
    doc["monotone"] = monotone.empty() ? "g" : monotone;
    doc["value"] = res.value;
    doc["provenance"] = "upper_bound_estimate";
    doc["restarts"] = cfg.restarts;
    doc["best_restart"] = res.best_restart;
    doc["iterations"] = res.iterations;
    if (loaded.dim_a == 2 && loaded.dim_b == 2 && sel.k == 2) {
        // Closed form available for two qubits: report it and the gap the
        // optimizer left on the table.
        const double exact = wootters_concurrence(rho);
        doc["wootters_exact"] = exact;
        doc["estimate_gap"] = res.value - exact;
    }
    doc["ensemble"] = io::ensemble_to_json(res.ensemble);
    return emit(cfg, doc, kExitOk);
}

int cmd_red(const RunConfig& cfg, const std::string& scenario_path) {
    const io::json j = io::load_json_file(scenario_path);
    if (!j.is_object())
        throw validation_error("scenario: expected an object");

    // Links: "random" (default) draws a fresh Haar pair per trial;
    // inline states pin them.
    bool random_links = true;
    PureState fixed12, fixed34;
    if (j.contains("links") && !j["links"].is_string()) {
        const io::json& links = j["links"];
        if (!links.contains("link12") || !links.contains("link34"))
            throw validation_error("links: need both link12 and link34");
        fixed12 = io::load_pure(links["link12"], "links.link12");
        fixed34 = io::load_pure(links["link34"], "links.link34");
        random_links = false;
    } else if (j.contains("links") && j["links"].get<std::string>() != "random") {
        throw validation_error("links: expected \"random\" or {link12, link34}");
    }

    int dim = 0;
    if (random_links) {
        if (!j.contains("dim") || !j["dim"].is_number_integer())
            throw validation_error("scenario: random links need an integer \"dim\"");
        dim = j["dim"].get<int>();
        if (dim < 2 || dim > 8)
            throw validation_error("dim: expected a value in [2, 8]");
    } else {
        if (fixed12.dim_b != fixed34.dim_a)
            throw validation_error("links: link12.dim_b must equal link34.dim_a");
        dim = fixed12.dim_b;
    }

    // Measurement: "canonical" (default), {"ranks": [...]} for random
    // draws, or {"operators": [...]} given inline.
    enum class MeasureKind { Canonical, RandomRanks, Inline } mkind =
        MeasureKind::Canonical;
    std::vector<int> ranks;
    red::KrausSet inline_kraus;
    const int middle_dim = random_links ? dim * dim : fixed12.dim_b * fixed34.dim_a;
    if (j.contains("measurement") && !j["measurement"].is_string()) {
        const io::json& m = j["measurement"];
        if (m.contains("ranks")) {
            if (!m["ranks"].is_array() || m["ranks"].empty())
                throw validation_error("measurement.ranks: expected a nonempty array");
            for (const auto& r : m["ranks"]) {
                if (!r.is_number_integer())
                    throw validation_error("measurement.ranks: entries must be integers");
                ranks.push_back(r.get<int>());
            }
            mkind = MeasureKind::RandomRanks;
        } else if (m.contains("operators")) {
            if (!m["operators"].is_array() || m["operators"].empty())
                throw validation_error("measurement.operators: expected a nonempty array");
            std::vector<Matrix> ops;
            for (std::size_t i = 0; i < m["operators"].size(); ++i)
                ops.push_back(io::load_matrix(
                    m["operators"][i],
                    "measurement.operators[" + std::to_string(i) + "]"));
            inline_kraus = red::KrausSet::make(std::move(ops));
            if (inline_kraus.dim() != middle_dim)
                throw validation_error("measurement.operators: dim must be d2 * d3");
            mkind = MeasureKind::Inline;
        } else {
            throw validation_error("measurement: expected \"canonical\", {ranks}, "
                                   "or {operators}");
        }
    } else if (j.contains("measurement") &&
               j["measurement"].get<std::string>() != "canonical") {
        throw validation_error("measurement: expected \"canonical\", {ranks}, "
                               "or {operators}");
    }

    int trials = 1;
    if (j.contains("trials")) {
        if (!j["trials"].is_number_integer() || j["trials"].get<int>() < 1)
            throw validation_error("trials: expected a positive integer");
        trials = j["trials"].get<int>();
    }
    if (cfg.trials >= 0)
        trials = std::max(cfg.trials, 1);
    // Nothing varies between trials when both the links and the
    // measurement are pinned.
    if (!random_links && mkind != MeasureKind::RandomRanks)
        trials = 1;

    const red::KrausSet canonical =
        (mkind == MeasureKind::Canonical) ? red::rpbes_canonical_kraus(dim)
                                          : red::KrausSet{};

    ojson detail = ojson::array();
    double min_slack = std::numeric_limits<double>::infinity();
    double slack_sum = 0.0;
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
        PureState link12 = fixed12, link34 = fixed34;
        if (random_links) {
            auto g1 = rng::derive(cfg.seed, kStreamLinks, 2 * static_cast<std::uint64_t>(t));
            auto g2 = rng::derive(cfg.seed, kStreamLinks, 2 * static_cast<std::uint64_t>(t) + 1);
            link12 = rng::pure_state(g1, dim, dim);
            link34 = rng::pure_state(g2, dim, dim);
        }

        red::BoundReport rep;
        switch (mkind) {
        case MeasureKind::Canonical:
            rep = red::check_bound(link12, link34, canonical);
            break;
        case MeasureKind::RandomRanks: {
            auto g = rng::derive(cfg.seed, kStreamKraus, static_cast<std::uint64_t>(t));
            rep = red::check_bound(link12, link34,
                                   red::random_kraus(g, middle_dim, ranks));
            break;
        }
        case MeasureKind::Inline:
            rep = red::check_bound(link12, link34, inline_kraus);
            break;
        }

        min_slack = std::min(min_slack, rep.slack);
        slack_sum += rep.slack;
        if (rep.slack < -cfg.tol)
            ++violations;
        ojson row;
        row["average_g"] = rep.average_g;
        row["bound"] = rep.bound;
        row["slack"] = rep.slack;
        detail.push_back(std::move(row));
    }

    ojson doc;
    doc["command"] = "red";
    doc["dim"] = dim;
    doc["trials"] = trials;
    doc["seed"] = cfg.seed;
    doc["slack_tolerance"] = cfg.tol;
    doc["min_slack"] = min_slack;
    doc["mean_slack"] = slack_sum / trials;
    doc["violations"] = violations;
    doc["provenance"] = "decomposition-average";
    doc["trials_detail"] = std::move(detail);
    return emit(cfg, doc, violations == 0 ? kExitOk : kExitPropertyFailure);
}

int cmd_selftest(const RunConfig& cfg) {
    const int trials = cfg.trials < 0 ? 20 : cfg.trials;
    const double tol = cfg.tol;

    struct Check {
        std::string name;
        int failures = 0;
        double worst = 0.0;

        void record(double deviation, double limit) {
            worst = std::max(worst, deviation);
            if (deviation > limit)
                ++failures;
        }
    };
    std::vector<Check> checks;

    if (trials > 0) {
        // Path agreement: the three computation routes give one answer.
        Check path_check{"path-agreement"};
        for (int t = 0; t < trials; ++t) {
            auto g = rng::derive(cfg.seed, kStreamSelftest, t);
            const int d = 2 + static_cast<int>(rng::uniform(g) * 3);
            const PureState psi = rng::pure_state(g, d, d);
            for (int k = 1; k <= d; ++k) {
                const double a = concurrence_k(psi, k, ConcurrencePath::Schmidt);
                const double b = concurrence_k(psi, k, ConcurrencePath::Compound);
                const double c = concurrence_k(psi, k, ConcurrencePath::PowerSum);
                path_check.record(std::max(std::abs(a - b), std::abs(a - c)), tol);
            }
        }
        checks.push_back(path_check);

        // Ordering: C_2^2 >= C_3^3 >= ... >= C_d^d >= G^d.
        Check order_check{"monotone-ordering"};
        for (int t = 0; t < trials; ++t) {
            auto g = rng::derive(cfg.seed, kStreamSelftest + 1, t);
            const int d = 2 + static_cast<int>(rng::uniform(g) * 4);
            const PureState psi = rng::pure_state(g, d, d);
            const MonotoneVector mv = monotone_vector(psi);
            const double gc = g_concurrence(psi);
            for (int k = 2; k < d; ++k) {
                const double hi = std::pow(mv.values(k - 1), k);
                const double lo = std::pow(mv.values(k), k + 1);
                order_check.record(lo - hi, tol);
            }
            for (int k = 2; k <= d; ++k)
                order_check.record(gc - mv.values(k - 1), tol);
        }
        checks.push_back(order_check);

        // G multiplies across tensor products.
        Check mult_check{"g-multiplicativity"};
        for (int t = 0; t < trials; ++t) {
            auto g = rng::derive(cfg.seed, kStreamSelftest + 2, t);
            const int d1 = 2 + static_cast<int>(rng::uniform(g) * 2);
            const int d2 = 2 + static_cast<int>(rng::uniform(g) * 2);
            const PureState a = rng::pure_state(g, d1, d1);
            const PureState b = rng::pure_state(g, d2, d2);
            const double lhs = g_concurrence(tensor_product(a, b));
            const double rhs = g_concurrence(a) * g_concurrence(b);
            mult_check.record(std::abs(lhs - rhs), tol);
        }
        checks.push_back(mult_check);

        // Spectrum -> monotones -> spectrum closes.
        Check round_check{"spectrum-round-trip"};
        for (int t = 0; t < trials; ++t) {
            auto g = rng::derive(cfg.seed, kStreamSelftest + 3, t);
            const int d = 2 + static_cast<int>(rng::uniform(g) * 4);
            const RealVector spec = rng::spectrum(g, d);
            const RealVector back =
                spectrum_from_monotones(monotone_vector_from_spectrum(spec, d));
            round_check.record((back - spec).cwiseAbs().maxCoeff(), tol);
        }
        checks.push_back(round_check);

        // Canonical phases move all of G12 * G34 to the ends; zero
        // phases move none.
        Check swap_check{"swap-saturation"};
        for (int t = 0; t < trials; ++t) {
            auto g = rng::derive(cfg.seed, kStreamSelftest + 4, t);
            const int d = 2 + static_cast<int>(rng::uniform(g) * 4);
            const RealVector lambda = rng::spectrum(g, d);
            const RealVector eta = rng::spectrum(g, d);
            const double ceiling =
                rpbes::g_final(lambda, eta, rpbes::PhaseMatrix::canonical(d));
            const double g12g34 = concurrence_k_from_spectrum(lambda, d, d) *
                                  concurrence_k_from_spectrum(eta, d, d);
            swap_check.record(std::abs(ceiling - g12g34), tol);
            swap_check.record(
                rpbes::g_final(lambda, eta, rpbes::PhaseMatrix::zero(d)), tol);
        }
        checks.push_back(swap_check);

        // Average delivered G never beats the product ceiling.
        Check bound_check{"distribution-bound"};
        for (int t = 0; t < trials; ++t) {
            auto g = rng::derive(cfg.seed, kStreamSelftest + 5, t);
            const PureState link12 = rng::pure_state(g, 2, 2);
            const PureState link34 = rng::pure_state(g, 2, 2);
            const red::KrausSet kraus = red::random_kraus(g, 4, {2, 1, 1});
            const red::BoundReport rep = red::check_bound(link12, link34, kraus);
            bound_check.record(-rep.slack, tol);
        }
        checks.push_back(bound_check);
    }

    int failures = 0;
    ojson rows = ojson::array();
    for (const Check& c : checks) {
        failures += c.failures;
        ojson row;
        row["name"] = c.name;
        row["failures"] = c.failures;
        row["worst"] = c.worst;
        rows.push_back(std::move(row));
    }

    ojson doc;
    doc["command"] = "selftest";
    doc["trials"] = trials;
    doc["seed"] = cfg.seed;
    doc["tolerance"] = tol;
    doc["checks"] = std::move(rows);
    doc["failures"] = failures;
    return emit(cfg, doc, failures == 0 ? kExitOk : kExitPropertyFailure);
}

} // namespace qcm::cli
