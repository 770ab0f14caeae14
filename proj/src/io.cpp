#include "randattr/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace randattr {

json to_json(const NoiseSpec& spec) {
    json j;
    switch (spec.dist) {
        case Distribution::Uniform:
            j["distribution"] = "uniform";
            j["params"] = {{"a", spec.lo}, {"b", spec.hi}};
            break;
        case Distribution::Gaussian:
            j["distribution"] = "gaussian";
            j["params"] = {{"mu", spec.mu}, {"sigma", spec.sigma}};
            break;
        case Distribution::Discrete:
            j["distribution"] = "discrete";
            j["params"] = {{"values", spec.values}, {"probabilities", spec.probs}};
            break;
    }
    j["increments_per_step"] = spec.increments_per_step;
    return j;
}

NoiseSpec noise_from_json(const json& j) {
    if (!j.contains("distribution")) throw config_error("noise: missing 'distribution'");
    const std::string d = j.at("distribution");
    const json p = j.value("params", json::object());
    const int k = j.value("increments_per_step", 1);
    try {
        if (d == "uniform") return NoiseSpec::uniform(p.at("a"), p.at("b"), k);
        if (d == "gaussian") return NoiseSpec::gaussian(p.at("mu"), p.at("sigma"), k);
        if (d == "discrete")
            return NoiseSpec::discrete(p.at("values").get<std::vector<double>>(),
                                       p.at("probabilities").get<std::vector<double>>(), k);
    } catch (const json::exception& e) {
        throw config_error(std::string("noise: ") + e.what());
    }
    throw config_error("noise: unknown distribution '" + d + "'");
}

namespace {

CoefSpec coef_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    return noise_from_json(j);
}

}  // namespace

SystemSpec system_from_json(const json& j) {
    if (!j.contains("system")) throw config_error("system: missing 'system'");
    const std::string name = j.at("system");
    const json p = j.value("params", json::object());
    try {
        if (name == "affine") return make_affine(coef_from_json(p.at("a")), coef_from_json(p.at("b")));
        if (name == "logistic") return make_logistic(noise_from_json(p.at("a")));
        if (name == "double_well")
            return make_double_well(p.value("h", 0.01), p.value("sigma", 0.1),
                                    p.value("box_half", 3.0));
        if (name == "contraction")
            return make_contraction(p.value("rate", 0.5), p.value("dim", 1));
        if (name == "rotation") return make_rotation(p.value("angle", 1.0));
    } catch (const json::exception& e) {
        throw config_error(std::string("system params: ") + e.what());
    }
    throw config_error("system: unknown system '" + name + "'");
}

json to_json(const Box& box) { return json{{"lower", box.lower}, {"upper", box.upper}}; }

Box box_from_json(const json& j) {
    Box b;
    try {
        b.lower = j.at("lower").get<Vec>();
        b.upper = j.at("upper").get<Vec>();
    } catch (const json::exception& e) {
        throw config_error(std::string("box: ") + e.what());
    }
    b.validate();
    return b;
}

json to_json(const PointCloud& cloud) {
    return json{{"resolution", cloud.resolution}, {"points", cloud.points}};
}

PointCloud cloud_from_json(const json& j) {
    PointCloud c;
    c.resolution = j.value("resolution", 0.0);
    c.points = j.at("points").get<std::vector<Vec>>();
    c.validate();
    return c;
}

json to_json(const Schedule& sched) {
    json j;
    j["x0"] = sched.x0;
    j["b_radii"] = sched.b_radii;
    j["u"] = sched.u;
    j["t"] = sched.t;
    j["delta_seq"] = sched.delta_seq;
    j["relaxed"] = sched.relaxed;
    if (!sched.gamma.empty()) j["gamma"] = sched.gamma;
    json boxes = json::array();
    for (const Box& b : sched.c_boxes) boxes.push_back(to_json(b));
    j["c_boxes"] = boxes;
    json levels = json::array();
    for (int n = 1; n <= sched.depth(); ++n)
        levels.push_back(1.0 - (sched.relaxed ? 2.0 : 1.0) * std::pow(2.0, -n));
    j["prob_floor"] = levels;
    return j;
}

json to_json(const CriterionReport& rep) {
    json j;
    j["criterion"] = rep.criterion;
    j["eps"] = rep.eps;
    j["delta"] = rep.delta;
    j["c_set"] = to_json(rep.c_set);
    j["estimate"] = rep.estimate;
    j["ci"] = {rep.ci.lo, rep.ci.hi};
    j["s_max"] = rep.s_max;
    j["t_max"] = rep.t_max;
    j["t0"] = rep.t0;
    j["verdict"] = to_string(rep.verdict);
    json curve = json::array();
    for (auto& [t, p] : rep.p_curve) curve.push_back({t, p});
    j["p_curve"] = curve;
    int ok = 0;
    for (char c : rep.outcomes) ok += c;
    j["outcomes_true"] = ok;
    j["outcomes_total"] = rep.outcomes.size();
    return j;
}

json to_json(const ModeReport& rep) {
    json j;
    j["pullback_as"] = rep.pullback_as;
    j["weak_in_prob"] = rep.weak_in_prob;
    j["forward_as"] = rep.forward_as;
    j["pullback_tail_fraction"] = rep.pullback_tail_fraction;
    j["forward_tail_fraction"] = rep.forward_tail_fraction;
    j["skipped_seeds"] = rep.skipped_seeds;
    json ex = json::array();
    for (auto& [t, f] : rep.exceedance) ex.push_back({t, f});
    j["exceedance"] = ex;
    return j;
}

std::string cloud_to_csv(const PointCloud& cloud) {
    std::ostringstream out;
    out.precision(17);
    const int d = cloud.dim();
    for (int a = 0; a < d; ++a) out << (a ? "," : "") << "x" << a;
    out << "\n";
    for (const Vec& p : cloud.points) {
        for (int a = 0; a < d; ++a) out << (a ? "," : "") << p[a];
        out << "\n";
    }
    return out.str();
}

PointCloud cloud_from_csv(const std::string& text) {
    PointCloud c;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Vec p;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) p.push_back(std::stod(cell));
        c.points.push_back(std::move(p));
    }
    c.validate();
    return c;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace randattr
