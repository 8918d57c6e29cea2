#include "aidlab/session.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "aidlab/parse.hpp"

namespace aidlab {

using ordered_json = nlohmann::ordered_json;

void SuiteConfig::validate() const {
    if (rank < 1) throw std::invalid_argument("config: rank must be >= 1");
    if (window < 1) throw std::invalid_argument("config: window must be >= 1");
    if (gram.rows() != 0 && (gram.rows() != rank || gram.cols() != rank))
        throw std::invalid_argument("config: gram matrix must be rank x rank");
    if (ywindow_cap < window)
        throw std::invalid_argument("config: ywindow cap below window");
}

RatMatrix SuiteConfig::effective_gram() const {
    return gram.rows() == 0 ? RatMatrix::identity(rank) : gram;
}

namespace {

ordered_json gram_json(const RatMatrix& g) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < g.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < g.cols(); ++j) row.push_back(g.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

RatMatrix gram_from(const ordered_json& rows) {
    if (!rows.is_array() || rows.empty())
        throw std::runtime_error("gram: expected a non-empty array of rows");
    const int n = static_cast<int>(rows.size());
    const int m = static_cast<int>(rows[0].size());
    RatMatrix g(n, m);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != m)
            throw std::runtime_error("gram: ragged rows");
        for (int j = 0; j < m; ++j) {
            auto r = Rat::parse(rows[i][j].get<std::string>());
            if (!r) throw std::runtime_error("gram: bad rational entry");
            g.at(i, j) = *r;
        }
    }
    return g;
}

ordered_json spec_json_obj(const AlgSpec& spec) {
    ordered_json j;
    j["rank"] = spec.rank();
    j["variant"] = variant_name(spec.variant());
    j["gram"] = gram_json(spec.gram());
    return j;
}

Variant variant_from(const std::string& name) {
    if (name == "finite") return Variant::finite;
    if (name == "loop") return Variant::loop;
    if (name == "affine") return Variant::affine;
    throw std::runtime_error("unknown variant: " + name);
}

AlgSpec spec_from(const ordered_json& j) {
    return AlgSpec::make(j.at("rank").get<int>(), gram_from(j.at("gram")),
                         variant_from(j.at("variant").get<std::string>()));
}

} // namespace

std::string gram_to_json(const RatMatrix& g) { return gram_json(g).dump(); }

RatMatrix gram_from_json(const std::string& text) {
    return gram_from(ordered_json::parse(text));
}

std::string session_to_json(const Session& s) {
    ordered_json j;
    j["spec"] = spec_json_obj(s.spec);
    ordered_json elems = ordered_json::object();
    for (const auto& [name, e] : s.elements) elems[name] = print_element(e);
    j["elements"] = std::move(elems);
    ordered_json dmaps = ordered_json::object();
    for (const auto& [name, d] : s.dmaps) {
        ordered_json dj;
        dj["window"] = d.window();
        ordered_json images = ordered_json::array();
        for (BasisVec b : d.domain()) {
            const Elem& img = d.image(b);
            if (img.is_zero()) continue;
            images.push_back(ordered_json::array({print_basis_vec(b), print_element(img)}));
        }
        dj["images"] = std::move(images);
        dmaps[name] = std::move(dj);
    }
    j["dmaps"] = std::move(dmaps);
    j["suite"] = {{"rank", s.suite.rank},
                  {"gram", gram_json(s.suite.effective_gram())},
                  {"window", s.suite.window},
                  {"ywindow_cap", s.suite.ywindow_cap},
                  {"seed", s.suite.seed}};
    return j.dump(2);
}

Session session_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    AlgSpec spec = spec_from(j.at("spec"));

    SuiteConfig config;
    if (j.contains("suite")) {
        const auto& sj = j["suite"];
        config.rank = sj.value("rank", spec.rank());
        if (sj.contains("gram")) config.gram = gram_from(sj["gram"]);
        config.window = sj.value("window", 6);
        config.ywindow_cap = sj.value("ywindow_cap", config.window + 8);
        config.seed = sj.value("seed", static_cast<std::uint64_t>(42));
    } else {
        config.rank = spec.rank();
        config.gram = spec.gram();
    }

    Session s{spec, {}, {}, config};
    if (j.contains("elements"))
        for (auto& [name, v] : j["elements"].items())
            s.elements.emplace(name, parse_element(spec, v.get<std::string>()));
    if (j.contains("dmaps")) {
        for (auto& [name, dj] : j["dmaps"].items()) {
            DMap d(spec, dj.at("window").get<int>());
            for (const auto& pair : dj.at("images")) {
                BasisVec b = parse_basis_vec(spec, pair.at(0).get<std::string>());
                d.set_image(b, parse_element(spec, pair.at(1).get<std::string>()));
            }
            s.dmaps.emplace(name, std::move(d));
        }
    }
    return s;
}

void save_session(const Session& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << session_to_json(s) << "\n";
}

Session load_session(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return session_from_json(ss.str());
}

std::string status_name(CheckStatus s) {
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::finding: return "finding";
    }
    return "?";
}

std::string report_to_json(const ReportFile& r) {
    ordered_json j;
    j["metadata"] = {{"tool", r.tool},
                     {"version", r.version},
                     {"seed", r.seed},
                     {"spec", ordered_json::parse(r.spec_json)}};
    ordered_json checks = ordered_json::array();
    for (const CheckResult& c : r.checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["params"] = ordered_json::parse(c.params_json);
        cj["status"] = status_name(c.status);
        cj["witness"] = ordered_json::parse(c.witness_json);
        cj["ms"] = c.ms;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    return j.dump(2);
}

bool report_any_failure(const ReportFile& r) {
    for (const CheckResult& c : r.checks)
        if (c.status == CheckStatus::fail) return true;
    return false;
}

} // namespace aidlab
