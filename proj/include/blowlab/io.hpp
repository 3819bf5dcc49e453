// File emission: CSV traces and snapshots, JSONL sweep records, summary
// JSON, and the per-invocation run record.
//
// Data artifacts are byte-deterministic for a fixed config: numbers are
// printed with %.17g (lossless for doubles) in fixed column order. The run
// record additionally carries wall-clock timestamps and is therefore the
// one artifact excluded from the byte-determinism contract.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "blowlab/config.hpp"
#include "blowlab/wave_types.hpp"

namespace blowlab {

inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void ensure_parent_dir(const std::filesystem::path& file) {
    const auto dir = file.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
}

inline void write_text(const std::filesystem::path& path, const std::string& content) {
    ensure_parent_dir(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
}

inline std::string trace_csv(const FunctionalTrace& tr) {
    std::ostringstream os;
    os << "t,F,Fpp,sup_u\n";
    for (std::size_t m = 0; m < tr.times.size(); ++m)
        os << fmt_g17(tr.times[m]) << ',' << fmt_g17(tr.F[m]) << ',' << fmt_g17(tr.Fpp[m]) << ','
           << fmt_g17(tr.sup_u[m]) << '\n';
    return os.str();
}

inline std::string snapshot_csv(const Snapshot& snap) {
    std::ostringstream os;
    os << "x,u\n";
    for (std::size_t i = 0; i < snap.x.size(); ++i)
        os << fmt_g17(snap.x[i]) << ',' << fmt_g17(snap.u[i]) << '\n';
    return os.str();
}

// Plot-ready series for a sweep: measured bracket and extrapolation per
// amplitude plus the theory curve anchored at the first converged point.
inline std::string sweep_plot_csv(const SweepResult& result, const TheoryPrediction& th) {
    double anchor_eps = 0.0, anchor_T = 0.0;
    for (const auto& pt : result.points)
        if (pt.est.converged && pt.est.extrapolated > 0) {
            anchor_eps = pt.eps;
            anchor_T = pt.est.extrapolated;
            break;
        }
    std::ostringstream os;
    os << "eps,T_lo,T_hi,T_extrap,a_of_eps,theory_curve\n";
    for (const auto& pt : result.points) {
        double theory = 0.0;
        if (anchor_T > 0) {
            theory = th.log_corrected ? anchor_T * pt.a_eps / a_of_eps(anchor_eps)
                                      : anchor_T * std::pow(pt.eps / anchor_eps, -th.kappa);
        }
        os << fmt_g17(pt.eps) << ',' << fmt_g17(pt.est.T_lo) << ',' << fmt_g17(pt.est.T_hi) << ','
           << fmt_g17(pt.est.extrapolated) << ',' << fmt_g17(pt.a_eps) << ',' << fmt_g17(theory)
           << '\n';
    }
    return os.str();
}

inline void append_jsonl(const std::filesystem::path& path, const json& record) {
    ensure_parent_dir(path);
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("cannot open for appending: " + path.string());
    out << record.dump() << '\n';
}

inline std::vector<json> read_jsonl(const std::filesystem::path& path) {
    std::vector<json> records;
    std::ifstream in(path, std::ios::binary);
    if (!in) return records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(json::parse(line));
    }
    return records;
}

inline std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Append-only record of one tool invocation. Timestamps vary run to run by
// nature; every other field is a pure function of the config.
struct RunRecord {
    json config;
    std::uint64_t hash = 0;
    std::string started_at;
    std::string finished_at;
    std::vector<std::string> outputs;
    json verdicts = json::object();

    json to_record() const {
        return json{{"config_hash", hash},     {"tool_version", kToolVersion},
                    {"config", config},        {"started_at", started_at},
                    {"finished_at", finished_at}, {"outputs", outputs},
                    {"verdicts", verdicts}};
    }
};

inline RunRecord start_run_record(const json& config) {
    RunRecord rec;
    rec.config = config;
    rec.hash = config_hash(config);
    rec.started_at = iso8601_now();
    return rec;
}

inline void finish_run_record(RunRecord& rec, const std::filesystem::path& dir) {
    rec.finished_at = iso8601_now();
    write_text(dir / "run_record.json", rec.to_record().dump(2) + "\n");
}

} // namespace blowlab
