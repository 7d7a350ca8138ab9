#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ltmv/wire.hpp"

namespace ltmv {

// Thin RAII wrapper over a socket fd. Sends use MSG_NOSIGNAL, so a peer
// hang-up surfaces as an exception instead of SIGPIPE.
class Socket {
public:
    Socket() = default;
    explicit Socket(int fd) : fd_(fd) {}
    ~Socket();
    Socket(Socket&& other) noexcept;
    Socket& operator=(Socket&& other) noexcept;
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;

    bool valid() const { return fd_ >= 0; }
    int fd() const { return fd_; }
    void close();
    void shutdown_write();

    void send_all(const void* data, std::size_t len);
    // Reads exactly len bytes. Returns false on clean EOF before the first
    // byte; throws if the stream ends mid-read.
    bool recv_exact(void* data, std::size_t len);
    // True when a read would not block within timeout_ms (0 = poll).
    bool readable(int timeout_ms) const;

private:
    int fd_ = -1;
};

Socket tcp_listen(std::uint16_t port, int backlog = 16);
std::uint16_t local_port(const Socket& listener);
// Blocks up to timeout_ms (-1 = forever); empty optional on timeout.
std::optional<Socket> tcp_accept(Socket& listener, int timeout_ms);
Socket tcp_connect(const std::string& host, std::uint16_t port);
// Retries connect at fixed delay; throws after the final failure.
Socket tcp_connect_retry(const std::string& host, std::uint16_t port,
                         unsigned attempts, int delay_ms);

void send_message(Socket& sock, const WireMessage& msg);
// Empty optional on clean EOF; throws on malformed or truncated frames.
std::optional<WireMessage> recv_message(Socket& sock);

}  // namespace ltmv
