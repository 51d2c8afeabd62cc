#include "pmns/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pmns/util.hpp"

namespace pmns {

const char* kVersion = "1.0.0";

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json field_to_json(const SpectralField& f) {
    Json j;
    j["N"] = f.spec.N;
    j["flags"] = Json{{"real_valued", f.real_valued}, {"div_free", f.div_free}};
    Json modes = Json::array();
    int N = f.spec.N;
    for (int a = -N; a <= N; ++a)
        for (int b = -N; b <= N; ++b)
            for (int c = -N; c <= N; ++c) {
                WaveVector k{a, b, c};
                if (k.is_zero()) continue;
                const Coeff& v = f.at(k);
                if (v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0) continue;
                modes.push_back(Json::array({a, b, c, v[0].real(), v[0].imag(), v[1].real(),
                                             v[1].imag(), v[2].real(), v[2].imag()}));
            }
    j["modes"] = std::move(modes);
    return j;
}

SpectralField field_from_json(const Json& j) {
    for (auto& [key, _] : j.items())
        if (key != "N" && key != "flags" && key != "modes")
            throw ConfigError("field file: unknown key '" + key + "'");
    if (!j.contains("N") || !j.contains("modes")) throw ConfigError("field file: need keys N and modes");
    LatticeSpec spec{j.at("N").get<int>()};
    bool real = false, divfree = false;
    if (j.contains("flags")) {
        const Json& fl = j.at("flags");
        for (auto& [key, _] : fl.items())
            if (key != "real_valued" && key != "div_free")
                throw ConfigError("field file flags: unknown key '" + key + "'");
        real = fl.value("real_valued", false);
        divfree = fl.value("div_free", false);
    }
    SpectralField f(spec, real, divfree);
    for (const Json& row : j.at("modes")) {
        if (!row.is_array() || row.size() != 9)
            throw ConfigError("field file: each mode row must have 9 entries");
        WaveVector k{row[0].get<int>(), row[1].get<int>(), row[2].get<int>()};
        Coeff c{Complex(row[3].get<double>(), row[4].get<double>()),
                Complex(row[5].get<double>(), row[6].get<double>()),
                Complex(row[7].get<double>(), row[8].get<double>())};
        f.set(k, c);
    }
    return f;
}

void save_field(const SpectralField& f, const std::string& path) {
    write_text_file(path, field_to_json(f).dump() + "\n");
}

SpectralField load_field(const std::string& path) {
    Json j = Json::parse(read_text_file(path));
    return field_from_json(j);
}

void save_trajectory(const Trajectory& traj, const std::string& dir, const std::string& stem,
                     std::vector<std::string>* written) {
    traj.validate();
    std::filesystem::create_directories(dir);
    Json index;
    index["grid"] = traj.grid;
    Json files = Json::array();
    for (std::size_t m = 0; m < traj.nodes(); ++m) {
        char name[64];
        std::snprintf(name, sizeof(name), "%s_%04zu.json", stem.c_str(), m);
        std::string path = dir + "/" + name;
        save_field(traj.fields[m], path);
        files.push_back(std::string(name));
        if (written) written->push_back(path);
    }
    index["nodes"] = std::move(files);
    std::string index_path = dir + "/" + stem + ".json";
    write_text_file(index_path, index.dump(2) + "\n");
    if (written) written->push_back(index_path);
}

Trajectory load_trajectory(const std::string& index_path) {
    Json index = Json::parse(read_text_file(index_path));
    for (auto& [key, _] : index.items())
        if (key != "grid" && key != "nodes")
            throw ConfigError("trajectory index: unknown key '" + key + "'");
    if (!index.contains("grid") || !index.contains("nodes"))
        throw ConfigError("trajectory index: need keys grid and nodes");
    Trajectory traj;
    traj.grid = index.at("grid").get<std::vector<double>>();
    std::filesystem::path base = std::filesystem::path(index_path).parent_path();
    for (const Json& name : index.at("nodes"))
        traj.fields.push_back(load_field((base / name.get<std::string>()).string()));
    traj.validate();
    return traj;
}

Json norm_report_to_json(const NormReport& r) {
    Json j;
    j["pm2"] = r.pm2;
    j["pm4"] = r.pm4;
    j["st_pm2"] = r.st_pm2;
    j["z4"] = r.z4;
    j["z4_tail"] = r.z4_tail;
    j["triple"] = r.triple;
    if (r.ck) {
        j["ck"] = *r.ck;
        j["ck_exponent"] = r.ck_exponent;
    }
    return j;
}

Json convergence_report_to_json(const ConvergenceReport& r) {
    Json j;
    j["stop"] = stop_reason_name(r.stop);
    j["eta"] = r.eta_used;
    j["x0_triple"] = r.x0_triple;
    j["admissible"] = r.admissible;
    j["margin"] = r.margin;
    j["truncated_nonlinearity"] = r.truncated_nonlinearity;
    j["triple_norms"] = r.triple_norms;
    j["diff_norms"] = r.diff_norms;
    j["ratios"] = r.ratios;
    return j;
}

Json region_sums_to_json(const RegionSums& r) {
    Json j;
    j["R"] = r.R;
    j["q1"] = r.q1;
    j["q2"] = r.q2;
    j["q3"] = r.q3;
    j["q4"] = r.q4;
    j["total"] = r.total;
    return j;
}

std::string radius_profile_csv(const RadiusProfile& p) {
    std::string csv = "t,rho,bound_sqrt,bound_alpha,tol_rho,kmin_usable,kmax_usable,status\n";
    for (const RadiusNode& n : p.nodes) {
        csv += format_double(n.t) + "," + format_double(n.rho) + "," + format_double(n.bound_sqrt) +
               "," + format_double(n.bound_alpha) + "," + format_double(n.tol_rho) + "," +
               format_double(n.kmin_usable) + "," + format_double(n.kmax_usable) + "," +
               node_status_name(n.status) + "\n";
    }
    return csv;
}

std::string lattice_sum_csv(const std::vector<LatticeSumRow>& rows) {
    std::string csv = "k1,k2,k3,R,sum,tail,weighted_total\n";
    for (const LatticeSumRow& r : rows) {
        csv += std::to_string(r.k.k1) + "," + std::to_string(r.k.k2) + "," +
               std::to_string(r.k.k3) + "," + std::to_string(r.R) + "," + format_double(r.s_r) +
               "," + format_double(r.tail) + "," + format_double(r.weighted_total) + "\n";
    }
    return csv;
}

std::string iso8601_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const RunManifest& m, const std::string& out_dir) {
    Json j;
    j["version"] = kVersion;
    j["command"] = m.command;
    j["config"] = m.config_echo;
    // The two timestamp fields are the only run-dependent entries; everything
    // else is a pure function of config and inputs.
    j["started"] = m.started.empty() ? iso8601_now() : m.started;
    j["finished"] = iso8601_now();
    Json inputs = Json::array();
    for (const std::string& p : m.inputs)
        inputs.push_back(Json{{"path", p}, {"digest", "fnv1a64:" + hex64(fnv1a64_file(p))}});
    j["inputs"] = std::move(inputs);
    Json outputs = Json::array();
    for (const std::string& p : m.outputs)
        outputs.push_back(Json{{"path", p}, {"digest", "fnv1a64:" + hex64(fnv1a64_file(p))}});
    j["outputs"] = std::move(outputs);
    write_text_file(out_dir + "/manifest.json", j.dump(2) + "\n");
}

}  // namespace pmns
