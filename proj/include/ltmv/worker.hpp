#pragma once

#include <cstdint>
#include <string>

namespace ltmv {

struct WorkerConfig {
    std::uint32_t worker_id = 0;
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;
    std::string rows_file;            // this worker's encoded rows
    std::uint64_t start_index = 0;    // global index of the file's first row
    unsigned connect_attempts = 25;
    int connect_delay_ms = 200;
    double initial_delay_s = 0.0;     // setup latency before the first row
    double per_task_delay_s = 0.0;    // extra latency per row, ahead of compute
};

// Connects, introduces itself, and streams one Result per row until it runs
// out of rows or the master says Done. Returns a process exit code: 0 for a
// clean run (including a mid-stream Done), nonzero on any failure.
int run_worker(const WorkerConfig& config);

}  // namespace ltmv
