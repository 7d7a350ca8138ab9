#include "ltmv/worker.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <thread>
#include <variant>

#include "ltmv/matrix.hpp"
#include "ltmv/net.hpp"

namespace ltmv {

namespace {

void sleep_s(double seconds) {
    if (seconds > 0.0)
        std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
}

// Outcome of a non-blocking look at the control channel.
enum class Control { Go, Stop, Failed };

Control poll_control(Socket& sock) {
    while (sock.readable(0)) {
        auto msg = recv_message(sock);
        if (!msg) return Control::Failed;  // master hung up mid-job
        if (std::holds_alternative<DoneMsg>(*msg)) return Control::Stop;
        if (std::holds_alternative<ErrorMsg>(*msg)) return Control::Failed;
        // Anything else at this stage is unexpected; keep going.
    }
    return Control::Go;
}

}  // namespace

int run_worker(const WorkerConfig& config) {
    try {
        Matrix rows = load_matrix(config.rows_file);

        Socket sock = tcp_connect_retry(config.host, config.port,
                                        config.connect_attempts, config.connect_delay_ms);
        send_message(sock, SetupMsg{config.worker_id, rows.rows(), rows.cols()});

        std::vector<double> x;
        for (;;) {
            auto msg = recv_message(sock);
            if (!msg) {
                std::fprintf(stderr, "worker %u: master hung up before the job started\n",
                             config.worker_id);
                return 3;
            }
            if (auto* vec = std::get_if<VectorMsg>(&*msg)) {
                x = std::move(vec->x);
                break;
            }
            if (auto* err = std::get_if<ErrorMsg>(&*msg)) {
                std::fprintf(stderr, "worker %u: master rejected setup: %s\n",
                             config.worker_id, err->text.c_str());
                return 3;
            }
            if (std::holds_alternative<DoneMsg>(*msg)) return 0;  // job was trivial
        }
        if (x.size() != rows.cols()) {
            std::fprintf(stderr, "worker %u: vector length %zu does not match %llu columns\n",
                         config.worker_id, x.size(),
                         static_cast<unsigned long long>(rows.cols()));
            return 3;
        }

        sleep_s(config.initial_delay_s);
        std::uint64_t sent = 0;
        for (std::uint64_t j = 0; j < rows.rows(); ++j) {
            sleep_s(config.per_task_delay_s);
            double value = dot(rows.row(j), x);
            // Check for a mid-stream Done before sending the result, so a row
            // finished after the master's decode stays on this side.
            switch (poll_control(sock)) {
                case Control::Stop:
                    return 0;
                case Control::Failed:
                    return 3;
                case Control::Go:
                    break;
            }
            send_message(sock, ResultMsg{config.start_index + j, value});
            ++sent;
        }
        send_message(sock, ProgressMsg{sent});

        // Out of rows; block until the master settles the job.
        for (;;) {
            auto msg = recv_message(sock);
            if (!msg) {
                std::fprintf(stderr, "worker %u: master hung up without a verdict\n",
                             config.worker_id);
                return 3;
            }
            if (std::holds_alternative<DoneMsg>(*msg)) return 0;
            if (auto* err = std::get_if<ErrorMsg>(&*msg)) {
                std::fprintf(stderr, "worker %u: job failed: %s\n", config.worker_id,
                             err->text.c_str());
                return 3;
            }
        }
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "worker %u: %s\n", config.worker_id, ex.what());
        return 3;
    }
}

}  // namespace ltmv
