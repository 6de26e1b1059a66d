#include "ortho/io.hpp"

#include <fstream>
#include <sstream>

namespace ortho {

Mat read_matrix_text(std::istream& in) {
    std::string word;
    if (!(in >> word)) throw std::runtime_error("matrix text: empty input");
    if (word != "ring") throw std::runtime_error("matrix text: expected leading 'ring'");
    std::int64_t p, k;
    if (!(in >> p >> k)) throw std::runtime_error("matrix text: expected 'ring p k'");
    RingDesc ring = RingDesc::make(p, k);
    int rows, cols;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0)
        throw std::runtime_error("matrix text: expected dimensions 'rows cols'");
    Mat m(ring, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            std::int64_t v;
            if (!(in >> v)) throw std::runtime_error("matrix text: not enough entries");
            m.set(i, j, v);
        }
    return m;
}

void write_matrix_text(std::ostream& out, const Mat& m) {
    out << "ring " << m.ring().p << " " << m.ring().k << "\n";
    out << m.rows() << " " << m.cols() << "\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) out << m(i, j) << (j + 1 == m.cols() ? "" : " ");
        out << "\n";
    }
}

Mat read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    return read_matrix_text(in);
}

Json vectors_to_json(const std::vector<Vec>& vs) {
    Json arr = Json::array();
    for (const auto& v : vs) arr.push_back(v);
    return arr;
}

std::vector<Vec> vectors_from_json(const Json& j) {
    std::vector<Vec> out;
    for (const auto& row : j) out.push_back(row.get<Vec>());
    return out;
}

Json sequence_to_json(const IsotropicSequence& s) {
    Json j;
    j["ring"] = {s.space().ring.p, s.space().ring.k};
    j["n"] = s.space().n;
    j["vectors"] = vectors_to_json(s.vectors());
    return j;
}

IsotropicSequence sequence_from_json(const Json& j) {
    RingDesc ring = RingDesc::make(j.at("ring").at(0).get<std::int64_t>(),
                                   j.at("ring").at(1).get<std::int64_t>());
    HyperbolicSpace space{ring, j.at("n").get<int>()};
    return IsotropicSequence(space, vectors_from_json(j.at("vectors")));
}

Json chain_to_json(const Chain& c) {
    Json j;
    j["ring"] = {c.space().ring.p, c.space().ring.k};
    j["n"] = c.space().n;
    j["degree"] = c.degree();
    Json terms = Json::array();
    for (const auto& [s, m] : c.terms()) {
        Json t;
        t["coef"] = m;
        t["vectors"] = vectors_to_json(s.vectors());
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

Chain chain_from_json(const Json& j) {
    RingDesc ring = RingDesc::make(j.at("ring").at(0).get<std::int64_t>(),
                                   j.at("ring").at(1).get<std::int64_t>());
    HyperbolicSpace space{ring, j.at("n").get<int>()};
    Chain c(space, j.at("degree").get<int>());
    for (const auto& t : j.at("terms"))
        c.add_term(IsotropicSequence(space, vectors_from_json(t.at("vectors"))),
                   t.at("coef").get<std::int64_t>());
    return c;
}

Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json certificate_to_json(const GeneralPositionCertificate& cert) {
    Json j;
    j["ring"] = {cert.space.ring.p, cert.space.ring.k};
    j["n"] = cert.space.n;
    j["w_basis"] = vectors_to_json(cert.w_basis);
    Json targets = Json::array();
    for (const auto& t : cert.targets) targets.push_back(vectors_to_json(t));
    j["targets"] = std::move(targets);
    Json wits = Json::array();
    for (const auto& w : cert.witnesses) wits.push_back(matrix_to_json(w));
    j["witnesses"] = std::move(wits);
    Json inters = Json::array();
    for (const auto& b : cert.intersections) inters.push_back(vectors_to_json(b));
    j["intersections"] = std::move(inters);
    j["trial_index"] = cert.trial_index;
    j["seed"] = cert.seed;
    j["via"] = cert.via;
    return j;
}

Json kappa_report_to_json(const KappaReport& rep) {
    Json j;
    j["proposition"] = rep.proposition;
    j["kappa"] = matrix_to_json(rep.kappa);
    j["identities"] = rep.identities;
    j["samples"] = rep.samples;
    j["checks"] = rep.checks;
    j["passed"] = rep.passed;
    j["counterexample"] = rep.counterexample;
    j["method"] = "identity";
    return j;
}

Json central_extension_report_to_json(const CentralExtensionReport& rep) {
    Json j;
    j["ring"] = rep.ring;
    j["n"] = rep.n;
    j["k"] = rep.k;
    j["mode"] = rep.mode;
    j["checks"] = rep.checks;
    j["passed"] = rep.passed;
    j["counterexample"] = rep.counterexample;
    j["method"] = rep.mode == "exhaustive" ? "enumeration" : "identity";
    return j;
}

Json orbit_report_to_json(const OrbitStabilizerReport& rep) {
    Json j;
    j["ring"] = rep.ring;
    j["n"] = rep.n;
    j["p"] = rep.p;
    j["iu_count"] = {{"value", rep.iu_count}, {"method", "enumeration"}};
    j["stabilizer_count"] = {{"value", rep.stabilizer_count}, {"method", "enumeration"}};
    j["group_order"] = {{"value", rep.group_order}, {"method", "enumeration"}};
    j["product_ok"] = rep.product_ok;
    return j;
}

Json homology_to_json(const std::vector<HomologyGroup>& groups) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < groups.size(); ++i) {
        Json g;
        g["degree"] = i;
        g["free_rank"] = groups[i].free_rank;
        Json tors = Json::array();
        for (const auto& t : groups[i].torsion) tors.push_back(t.str());
        g["torsion"] = std::move(tors);
        g["pretty"] = groups[i].str();
        g["method"] = "SNF";
        arr.push_back(std::move(g));
    }
    return arr;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace ortho
