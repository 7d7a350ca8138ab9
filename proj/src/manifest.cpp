#include "ltmv/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <stdexcept>

#include "ltmv/lt_graph.hpp"
#include "ltmv/soliton.hpp"

namespace ltmv {

namespace {

using nlohmann::json;

json strategy_to_json(const StrategySpec& s) {
    json j;
    j["kind"] = s.name();
    j["p"] = s.p;
    switch (s.kind) {
        case StrategySpec::Kind::Replication:
            j["r"] = s.r;
            break;
        case StrategySpec::Kind::Mds:
            j["k"] = s.k;
            break;
        case StrategySpec::Kind::Lt:
            j["alpha"] = s.alpha;
            j["c"] = s.c;
            j["delta"] = s.delta;
            break;
        case StrategySpec::Kind::Uncoded:
            break;
    }
    return j;
}

StrategySpec strategy_from_json(const json& j) {
    const std::string kind = j.at("kind");
    unsigned p = j.at("p");
    if (kind == "uncoded") return StrategySpec::uncoded(p);
    if (kind == "rep") return StrategySpec::replication(p, j.at("r"));
    if (kind == "mds") return StrategySpec::mds(p, j.at("k"));
    if (kind == "lt")
        return StrategySpec::lt(p, j.at("alpha"), j.at("c"), j.at("delta"));
    throw std::runtime_error("manifest: unknown strategy kind '" + kind + "'");
}

}  // namespace

void save_manifest(const JobManifest& manifest, const std::string& path) {
    json j;
    j["m"] = manifest.m;
    j["n"] = manifest.n;
    j["m_e"] = manifest.m_e;
    j["seed"] = manifest.seed;
    j["strategy"] = strategy_to_json(manifest.strategy);
    j["workers"] = json::array();
    for (const auto& part : manifest.parts)
        j["workers"].push_back({{"file", part.file},
                                {"start_index", part.start_index},
                                {"count", part.count}});
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << j.dump(2) << '\n';
}

JobManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read manifest: " + path);
    json j = json::parse(in);
    JobManifest m;
    m.m = j.at("m");
    m.n = j.at("n");
    m.m_e = j.at("m_e");
    m.seed = j.at("seed");
    m.strategy = strategy_from_json(j.at("strategy"));
    for (const auto& w : j.at("workers"))
        m.parts.push_back({w.at("file"), w.at("start_index"), w.at("count")});
    if (m.parts.size() != m.strategy.p)
        throw std::runtime_error("manifest: worker entries do not match p");
    return m;
}

JobManifest encode_and_stage(const Matrix& a, const StrategySpec& spec,
                             std::uint64_t seed, const std::string& out_dir) {
    spec.validate();
    const std::uint64_t m = a.rows();

    Matrix encoded;
    Assignment plan;
    switch (spec.kind) {
        case StrategySpec::Kind::Uncoded:
            encoded = a;
            plan = replication_plan(m, spec.p, 1);
            break;
        case StrategySpec::Kind::Replication:
            encoded = a;
            plan = replication_plan(m, spec.p, spec.r);
            break;
        case StrategySpec::Kind::Mds:
            encoded = mds_encode(a, spec.p, spec.k, seed).rows;
            plan = contiguous_plan(encoded.rows(), spec.p);
            break;
        case StrategySpec::Kind::Lt: {
            auto dist = DegreeDistribution::robust(m, spec.c, spec.delta);
            auto graph = generate_graph(m, spec.alpha, dist, seed);
            if (graph.encoded_count() % spec.p != 0)
                throw std::invalid_argument(
                    "worker count must divide the encoded row count");
            encoded = encode_matrix(a, graph);
            plan = contiguous_plan(encoded.rows(), spec.p);
            break;
        }
    }

    std::filesystem::create_directories(out_dir);
    JobManifest manifest;
    manifest.m = m;
    manifest.n = a.cols();
    manifest.m_e = encoded.rows();
    manifest.strategy = spec;
    manifest.seed = seed;
    for (unsigned w = 0; w < spec.p; ++w) {
        auto [start, count] = plan.blocks[w];
        Matrix part(count, a.cols());
        for (std::uint64_t i = 0; i < count; ++i)
            std::copy(encoded.row(start + i).begin(), encoded.row(start + i).end(),
                      part.row(i).begin());
        std::string file = "worker_" + std::to_string(w) + ".cmv";
        save_matrix(part, (std::filesystem::path(out_dir) / file).string());
        manifest.parts.push_back({file, start, count});
    }
    save_manifest(manifest,
                  (std::filesystem::path(out_dir) / "manifest.json").string());
    return manifest;
}

}  // namespace ltmv
