#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltmv/matrix.hpp"
#include "ltmv/strategies.hpp"

namespace ltmv {

struct WorkerPart {
    std::string file;           // row file, relative to the manifest directory
    std::uint64_t start_index;  // global index of the worker's first encoded row
    std::uint64_t count;
    bool operator==(const WorkerPart&) const = default;
};

struct JobManifest {
    std::uint64_t m = 0;  // source rows
    std::uint64_t n = 0;  // columns
    std::uint64_t m_e = 0;  // encoded rows
    StrategySpec strategy;
    std::uint64_t seed = 0;  // regenerates the LT graph / MDS generator
    std::vector<WorkerPart> parts;
};

void save_manifest(const JobManifest& manifest, const std::string& path);
JobManifest load_manifest(const std::string& path);

// Encodes A per the strategy, splits the encoded rows into one file per
// worker under out_dir, and writes out_dir/manifest.json. Deterministic for
// a fixed seed, so a rerun produces byte-identical files.
JobManifest encode_and_stage(const Matrix& a, const StrategySpec& spec,
                             std::uint64_t seed, const std::string& out_dir);

}  // namespace ltmv
