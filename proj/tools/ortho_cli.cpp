// Command-line front end: subcommand dispatch, JSON/CSV report emission,
// reproducibility metadata. Reports are deterministic for a fixed config
// (timing goes to stderr, never into the report).

#include "ortho/io.hpp"
#include "ortho/groupring.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace ortho;

namespace {

constexpr const char* kVersion = "1.0.0";

struct CommonOpts {
    std::int64_t p = 3, k = 1;
    int n = 2;
    std::uint64_t seed = 1;
    std::uint64_t cap = kDefaultVectorCap;
    int workers = 1;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_n = true) {
    cmd->add_option("--ring", [&o](const std::vector<std::string>& vals) {
            if (vals.size() != 2) return false;
            o.p = std::stoll(vals[0]);
            o.k = std::stoll(vals[1]);
            return true;
        }, "ring parameters p k (odd prime p, exponent k)")
        ->expected(2);
    if (with_n) cmd->add_option("--n", o.n, "hyperbolic rank n");
    cmd->add_option("--seed", o.seed, "seed for all randomized search/sampling");
    cmd->add_option("--cap", o.cap, "enumeration cap");
    cmd->add_option("--workers", o.workers, "worker count for partitioned scans");
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
}

Json config_json(const CommonOpts& o, Json extra = Json::object()) {
    Json c;
    c["ring"] = {o.p, o.k};
    c["n"] = o.n;
    c["seed"] = o.seed;
    c["cap"] = o.cap;
    c["workers"] = o.workers;
    for (auto& [key, val] : extra.items()) c[key] = val;
    return c;
}

void flatten_csv(const Json& j, const std::string& prefix, std::ostream& os) {
    if (j.is_object()) {
        for (auto& [key, val] : j.items())
            flatten_csv(val, prefix.empty() ? key : prefix + "." + key, os);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten_csv(j[i], prefix + "[" + std::to_string(i) + "]", os);
    } else {
        os << prefix << "," << j.dump() << "\n";
    }
}

// exit code 0: all checks passed; 1: a falsified identity, report still
// written; 2: usage or resource errors
int emit(const std::string& subcommand, const CommonOpts& o, const Json& config, Json results,
         bool passed) {
    Json report;
    report["tool"] = "ortho";
    report["version"] = kVersion;
    report["subcommand"] = subcommand;
    report["config"] = config;
    report["config_hash"] = fnv1a_hex(config.dump());
    report["results"] = std::move(results);
    report["passed"] = passed;

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) throw std::runtime_error("cannot open output file: " + o.out);
        os = &file;
    }
    if (o.format == "csv") {
        flatten_csv(report, "", *os);
    } else {
        *os << report.dump(2) << "\n";
    }
    return passed ? 0 : 1;
}

Json load_json_input(const std::string& path) {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return Json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of the isotropic-sequence complex machinery over Z/p^k"};
    app.require_subcommand(1);

    int exit_code = 0;
    auto t0 = std::chrono::steady_clock::now();

    CommonOpts o;

    // ring-info
    auto* ring_info = app.add_subcommand("ring-info", "describe the ring Z/p^k");
    add_common(ring_info, o, false);
    ring_info->callback([&]() {
        RingDesc ring = RingDesc::make(o.p, o.k);
        Json r;
        r["ring"] = ring.str();
        r["modulus"] = ring.modulus;
        r["unit_count"] = ring.unit_count();
        r["residue_field"] = "F_" + std::to_string(ring.p);
        r["half"] = ring.half();
        exit_code = emit("ring-info", o, config_json(o), r, true);
    });

    // enumerate
    int len = 1;
    bool count_only = false;
    auto* enumerate = app.add_subcommand("enumerate", "enumerate IU_k sequences");
    add_common(enumerate, o);
    enumerate->add_option("--len", len, "sequence length k");
    enumerate->add_flag("--count-only", count_only, "emit the count only");
    enumerate->callback([&]() {
        RingDesc ring = RingDesc::make(o.p, o.k);
        HyperbolicSpace space{ring, o.n};
        auto all = enumerate_iu(space, len, o.cap);
        Json r;
        r["count"] = {{"value", all.size()}, {"method", "enumeration"}};
        if (!count_only) {
            Json seqs = Json::array();
            for (const auto& s : all) seqs.push_back(vectors_to_json(s.vectors()));
            r["sequences"] = std::move(seqs);
        }
        exit_code = emit("enumerate", o, config_json(o, {{"len", len}, {"count_only", count_only}}), r,
                         true);
    });

    // homology
    int max_degree = 1;
    auto* hom = app.add_subcommand("homology", "integral homology of C_*(n) via Smith normal form");
    add_common(hom, o);
    hom->add_option("--max-degree", max_degree, "compute H_i for i <= this");
    hom->callback([&]() {
        RingDesc ring = RingDesc::make(o.p, o.k);
        HyperbolicSpace space{ring, o.n};
        auto groups = homology(space, max_degree, o.cap);
        Json r;
        r["homology"] = homology_to_json(groups);
        for (auto& g : r["homology"])
            g["provenance"] = g["degree"].get<int>() == 0
                                  ? "exact"
                                  : "empirical, finite residue field";
        exit_code = emit("homology", o, config_json(o, {{"max_degree", max_degree}}), r, true);
    });

    // witt-complete
    std::string in_path;
    auto* witt = app.add_subcommand("witt-complete", "complete a sequence to a hyperbolic basis");
    add_common(witt, o);
    witt->add_option("--in", in_path, "sequence JSON file (- for stdin)")->required();
    witt->callback([&]() {
        IsotropicSequence seq = sequence_from_json(load_json_input(in_path));
        HyperbolicBasis basis = hyperbolic_complete(seq);
        OrthogonalElement g = transitivity_witness(seq);
        Json r;
        r["basis_columns"] = vectors_to_json(basis.columns);
        r["witness"] = matrix_to_json(g.matrix);
        r["gram_is_hyperbolic"] = {{"value", true}, {"method", "identity"}};
        r["witness_orthogonal"] = {{"value", check_orthogonal(seq.space(), g.matrix)},
                                   {"method", "identity"}};
        exit_code = emit("witt-complete", o, config_json(o, {{"in", in_path}}), r, true);
    });

    // general-position
    std::uint64_t budget = kDefaultGpBudget;
    auto* gp = app.add_subcommand("general-position", "search for a summand in general position");
    add_common(gp, o);
    gp->add_option("--targets", in_path, "JSON array of target bases (- for stdin)")->required();
    gp->add_option("--budget", budget, "trial budget");
    gp->callback([&]() {
        RingDesc ring = RingDesc::make(o.p, o.k);
        HyperbolicSpace space{ring, o.n};
        Json tj = load_json_input(in_path);
        std::vector<std::vector<Vec>> targets;
        for (const auto& t : tj) targets.push_back(vectors_from_json(t));
        auto cert = find_general_position(space, targets, o.seed, budget);
        Json r;
        bool ok = true;
        if (cert) {
            r["result"] = "certificate";
            r["certificate"] = certificate_to_json(*cert);
            ok = verify_certificate(*cert);
            r["verified"] = {{"value", ok}, {"method", "identity"}};
        } else {
            r["result"] = "search-exhausted";
            r["budget"] = budget;
        }
        exit_code = emit("general-position", o,
                         config_json(o, {{"targets", in_path}, {"budget", budget}}), r, ok);
    });

    // bound-cycle
    bool no_fallback = false;
    auto* bc = app.add_subcommand("bound-cycle", "produce tau with d(tau) = z");
    add_common(bc, o);
    bc->add_option("--in", in_path, "chain JSON file (- for stdin)")->required();
    bc->add_flag("--no-fallback", no_fallback, "disable the SNF fallback engine");
    bc->callback([&]() {
        Chain z = chain_from_json(load_json_input(in_path));
        BoundCycleOptions opt;
        opt.allow_snf_fallback = !no_fallback;
        auto res = bound_cycle(z, o.seed, opt);
        Json r;
        r["engine"] = res.engine;
        r["tau"] = chain_to_json(res.bounding);
        bool ok = apply_d(res.bounding) == z;
        r["verified"] = {{"value", ok}, {"method", "identity"}};
        exit_code = emit("bound-cycle", o, config_json(o, {{"in", in_path}}), r, ok);
    });

    // stabilizer
    std::string build_path, read_path;
    int stab_k = 1;
    bool do_audit = false;
    auto* stab = app.add_subcommand("stabilizer", "build/read stabilizer parametrizations");
    add_common(stab, o);
    stab->add_option("--build", build_path, "params JSON file (- for stdin)");
    stab->add_option("--read", read_path, "matrix text file");
    stab->add_option("--k", stab_k, "number of fixed basis vectors e_1..e_k");
    stab->add_flag("--audit", do_audit, "run the orbit-stabilizer audit (see orbit-audit)");
    stab->callback([&]() {
        RingDesc ring = RingDesc::make(o.p, o.k);
        HyperbolicSpace space{ring, o.n};
        Json r;
        if (do_audit) {
            auto rep = orbit_stabilizer_audit(ring, o.n, stab_k, o.workers);
            r = orbit_report_to_json(rep);
            exit_code = emit("stabilizer", o, config_json(o, {{"k", stab_k}, {"audit", true}}), r,
                             rep.product_ok);
            return;
        }
        if (!build_path.empty()) {
            Json pj = load_json_input(build_path);
            std::vector<std::vector<std::int64_t>> c;
            for (const auto& row : pj.at("c")) c.push_back(row.get<std::vector<std::int64_t>>());
            std::vector<Vec> x = vectors_from_json(pj.at("x"));
            HyperbolicSpace sub{ring, o.n - stab_k};
            Mat B(ring, sub.dim(), sub.dim());
            const auto& bj = pj.at("B");
            for (int i = 0; i < sub.dim(); ++i)
                for (int j = 0; j < sub.dim(); ++j) B.set(i, j, bj.at(i).at(j).get<std::int64_t>());
            auto g = build_stabilizer_element(StabilizerParams::make(space, stab_k, c, x, B));
            r["matrix"] = matrix_to_json(g.matrix);
            r["orthogonal"] = {{"value", true}, {"method", "identity"}};
        } else if (!read_path.empty()) {
            Mat m = read_matrix_file(read_path);
            auto params = read_stabilizer_params(OrthogonalElement::checked(space, m), stab_k);
            r["c"] = params.c;
            r["x"] = vectors_to_json(params.x);
            r["B"] = matrix_to_json(params.B);
            r["round_trip"] = {{"value", build_stabilizer_element(params).matrix == m},
                               {"method", "identity"}};
        } else {
            throw CLI::ValidationError("stabilizer", "one of --build/--read/--audit is required");
        }
        exit_code = emit("stabilizer", o, config_json(o, {{"k", stab_k}}), r, true);
    });

    // local-action
    std::int64_t unit_a = 1;
    auto* la = app.add_subcommand("local-action", "conjugate a stabilizer element by D_{a,k}");
    add_common(la, o);
    la->add_option("--a", unit_a, "unit a")->required();
    la->add_option("--k", stab_k, "number of fixed basis vectors");
    la->add_option("--in", in_path, "matrix text file (element of T_k)")->required();
    la->callback([&]() {
        RingDesc ring = RingDesc::make(o.p, o.k);
        HyperbolicSpace space{ring, o.n};
        Mat m = read_matrix_file(in_path);
        auto g = OrthogonalElement::checked(space, m);
        auto conj = local_action(unit_a, g, stab_k);
        Json r;
        r["conjugate"] = matrix_to_json(conj.matrix);
        r["closed_form_agrees"] = {{"value", true}, {"method", "identity"}};
        exit_code = emit("local-action", o, config_json(o, {{"a", unit_a}, {"k", stab_k}}), r, true);
    });

    // central-extension-check
    std::string mode = "exhaustive";
    std::uint64_t samples = 1000;
    auto* ce = app.add_subcommand("central-extension-check", "verify the kernel extension of L_k");
    add_common(ce, o);
    ce->add_option("--k", stab_k, "number of fixed basis vectors");
    ce->add_option("--mode", mode, "exhaustive|sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    ce->add_option("--samples", samples, "sample count in sampled mode");
    ce->callback([&]() {
        RingDesc ring = RingDesc::make(o.p, o.k);
        auto rep = central_extension_check(ring, o.n, stab_k, mode == "exhaustive", samples, o.seed);
        exit_code = emit("central-extension-check", o,
                         config_json(o, {{"k", stab_k}, {"mode", mode}, {"samples", samples}}),
                         central_extension_report_to_json(rep), rep.passed);
    });

    // orbit-audit
    int audit_p = 1;
    auto* audit = app.add_subcommand("orbit-audit", "orbit-stabilizer counting identity");
    add_common(audit, o);
    audit->add_option("--p", audit_p, "sequence length p");
    audit->callback([&]() {
        RingDesc ring = RingDesc::make(o.p, o.k);
        auto rep = orbit_stabilizer_audit(ring, o.n, audit_p, o.workers);
        exit_code = emit("orbit-audit", o, config_json(o, {{"p", audit_p}}),
                         orbit_report_to_json(rep), rep.product_ok);
    });

    // sm-search
    int m_len = 2;
    auto* sm = app.add_subcommand("sm-search", "search for an S(m)-sequence and build s_m");
    add_common(sm, o, false);
    sm->add_option("--m", m_len, "sequence length m")->required();
    sm->callback([&]() {
        RingDesc ring = RingDesc::make(o.p, o.k);
        auto seq = sm_search(ring, m_len);
        Json r;
        if (seq) {
            r["result"] = "found";
            r["sequence"] = seq->units();
            GroupRingElem s = sm_element(*seq);
            Json terms = Json::array();
            for (const auto& [u, c] : s.terms()) terms.push_back({{"unit", u}, {"coef", c}});
            r["s_m"] = std::move(terms);
            r["augmentation"] = {{"value", s.augmentation()}, {"method", "identity"}};
            exit_code = emit("sm-search", o, config_json(o, {{"m", m_len}}), r,
                             s.augmentation() == 1);
        } else {
            r["result"] = "none";
            r["method"] = "search";
            exit_code = emit("sm-search", o, config_json(o, {{"m", m_len}}), r, true);
        }
    });

    // action-check
    std::string prop = "global";
    auto* ac = app.add_subcommand("action-check", "kappa identity suites");
    add_common(ac, o);
    ac->add_option("--prop", prop, "global|scaling|stabilizer")
        ->check(CLI::IsMember({"global", "scaling", "stabilizer"}));
    ac->add_option("--a", unit_a, "unit a")->required();
    ac->add_option("--k", stab_k, "k for the stabilizer suite");
    ac->add_option("--samples", samples, "sample count");
    ac->callback([&]() {
        RingDesc ring = RingDesc::make(o.p, o.k);
        HyperbolicSpace space{ring, o.n};
        KappaReport rep;
        if (prop == "global")
            rep = kappa_check_global(space, unit_a, samples, o.seed);
        else if (prop == "scaling")
            rep = kappa_check_scaling(space, unit_a, samples, o.seed);
        else
            rep = kappa_check_stabilizer(space, unit_a, stab_k, samples, o.seed);
        exit_code =
            emit("action-check", o,
                 config_json(o, {{"prop", prop}, {"a", unit_a}, {"k", stab_k}, {"samples", samples}}),
                 kappa_report_to_json(rep), rep.passed);
    });

    // d1-table
    auto* d1 = app.add_subcommand("d1-table", "q = 0 coinvariant values of d1 for p = 1..n");
    add_common(d1, o);
    d1->callback([&]() {
        RingDesc ring = RingDesc::make(o.p, o.k);
        Json values = Json::array();
        bool ok = true;
        for (int p = 1; p <= o.n; ++p) {
            int v = d1_coinvariants(ring, o.n, p);
            ok = ok && v == p % 2;
            values.push_back(v);
        }
        Json r;
        r["table"] = values;
        r["method"] = "identity";
        r["faces_certified_by_witness"] = true;
        exit_code = emit("d1-table", o, config_json(o), r, ok);
    });

    // tau-check
    auto* tc = app.add_subcommand("tau-check", "tau chain map and insertion matrices");
    add_common(tc, o);
    tc->add_option("--samples", samples, "sampled chain count");
    tc->callback([&]() {
        RingDesc ring = RingDesc::make(o.p, o.k);
        if (o.n < 2) throw std::invalid_argument("tau-check requires n >= 2");
        HyperbolicSpace src{ring, o.n - 2};
        Json r;
        bool ok = true;
        // degree-0 generator: the three insertions form a cycle
        Chain c0(src, 0);
        c0.add_term(IsotropicSequence::empty(src), 1);
        bool d0 = apply_d(tau_map(c0)).is_zero();
        ok = ok && d0;
        r["d_tau_empty_is_zero"] = {{"value", d0}, {"method", "identity"}};
        // sampled chains commute with d
        std::uint64_t failures = 0;
        if (src.n >= 1) {
            Sampler s(o.seed);
            for (std::uint64_t t = 0; t < samples; ++t) {
                int deg = 1 + (src.n > 1 ? static_cast<int>(t % 2) : 0);
                Chain c(src, deg);
                for (int i = 0; i < 2; ++i) c.add_term(s.iu_sequence(src, deg), s.integer_in(-2, 2));
                if (!(apply_d(tau_map(c)) == tau_map(apply_d(c)))) ++failures;
            }
        }
        ok = ok && failures == 0;
        r["chain_map_samples"] = samples;
        r["chain_map_failures"] = failures;
        auto mats = tau_matrices_check(ring, o.n, samples, o.seed);
        ok = ok && mats.passed;
        r["matrices"] = kappa_report_to_json(mats);
        exit_code = emit("tau-check", o, config_json(o, {{"samples", samples}}), r, ok);
    });

    // d1-h1-explore (exploratory, no acceptance weight)
    auto* h1 = app.add_subcommand(
        "d1-h1-explore",
        "exploratory: abelianizations and the embedding-induced map (no acceptance weight)");
    add_common(h1, o);
    h1->callback([&]() {
        RingDesc ring = RingDesc::make(o.p, o.k);
        auto rep = h1_inclusion_report(ring, o.n);
        auto ab_json = [](const AbelianizationReport& a) {
            Json j;
            j["ring"] = a.ring;
            j["n"] = a.n;
            j["group_order"] = a.group_order;
            j["commutator_order"] = a.commutator_order;
            j["abelianization_order"] = a.abelianization_order;
            j["coset_orders"] = a.coset_orders;
            j["method"] = "enumeration";
            return j;
        };
        Json r;
        r["source"] = ab_json(rep.source);
        r["target"] = ab_json(rep.target);
        r["embedding_induced"] = {{"image_order", rep.image_order},
                                  {"injective", rep.injective},
                                  {"surjective", rep.surjective}};
        r["note"] = "exploratory shadow of the degree-1 differential; no acceptance weight";
        exit_code = emit("d1-h1-explore", o, config_json(o), r, true);
    });

    // d1-permutation-check
    int face_i = 1;
    auto* dp = app.add_subcommand("d1-permutation-check", "the face permutation matrix identities");
    add_common(dp, o);
    dp->add_option("--p", audit_p, "sequence length p");
    dp->add_option("--i", face_i, "face index i");
    dp->add_option("--samples", samples, "sample count");
    dp->callback([&]() {
        RingDesc ring = RingDesc::make(o.p, o.k);
        auto rep = d1_permutation_check(ring, o.n, audit_p, face_i, samples, o.seed);
        exit_code = emit("d1-permutation-check", o,
                         config_json(o, {{"p", audit_p}, {"i", face_i}, {"samples", samples}}),
                         kappa_report_to_json(rep), rep.passed);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const CapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    auto t1 = std::chrono::steady_clock::now();
    std::cerr << "# wall-time-ms "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() << "\n";
    return exit_code;
}
