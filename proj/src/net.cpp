#include "ltmv/net.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <stdexcept>
#include <thread>

#include "ltmv/binio.hpp"

namespace ltmv {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw std::runtime_error(what + ": " + std::strerror(errno));
}

}  // namespace

Socket::~Socket() { close(); }

Socket::Socket(Socket&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

Socket& Socket::operator=(Socket&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = other.fd_;
        other.fd_ = -1;
    }
    return *this;
}

void Socket::close() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

void Socket::shutdown_write() {
    if (fd_ >= 0) ::shutdown(fd_, SHUT_WR);
}

void Socket::send_all(const void* data, std::size_t len) {
    const char* p = static_cast<const char*>(data);
    while (len > 0) {
        ssize_t n = ::send(fd_, p, len, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            fail("send");
        }
        p += n;
        len -= std::size_t(n);
    }
}

bool Socket::recv_exact(void* data, std::size_t len) {
    char* p = static_cast<char*>(data);
    std::size_t got = 0;
    while (got < len) {
        ssize_t n = ::recv(fd_, p + got, len - got, 0);
        if (n < 0) {
            if (errno == EINTR) continue;
            fail("recv");
        }
        if (n == 0) {
            if (got == 0) return false;
            throw std::runtime_error("connection closed mid-frame");
        }
        got += std::size_t(n);
    }
    return true;
}

bool Socket::readable(int timeout_ms) const {
    pollfd pfd{fd_, POLLIN, 0};
    int rc = ::poll(&pfd, 1, timeout_ms);
    if (rc < 0) {
        if (errno == EINTR) return false;
        fail("poll");
    }
    return rc > 0;
}

Socket tcp_listen(std::uint16_t port, int backlog) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) fail("socket");
    Socket sock(fd);
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) fail("bind");
    if (::listen(fd, backlog) < 0) fail("listen");
    return sock;
}

std::uint16_t local_port(const Socket& listener) {
    sockaddr_in addr{};
    socklen_t len = sizeof addr;
    if (::getsockname(listener.fd(), reinterpret_cast<sockaddr*>(&addr), &len) < 0)
        fail("getsockname");
    return ntohs(addr.sin_port);
}

std::optional<Socket> tcp_accept(Socket& listener, int timeout_ms) {
    if (!listener.readable(timeout_ms)) return std::nullopt;
    int fd = ::accept(listener.fd(), nullptr, nullptr);
    if (fd < 0) fail("accept");
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    return Socket(fd);
}

Socket tcp_connect(const std::string& host, std::uint16_t port) {
    int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) fail("socket");
    Socket sock(fd);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
        throw std::runtime_error("bad host address: " + host);
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0)
        fail("connect to " + host);
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    return sock;
}

Socket tcp_connect_retry(const std::string& host, std::uint16_t port,
                         unsigned attempts, int delay_ms) {
    for (unsigned i = 1;; ++i) {
        try {
            return tcp_connect(host, port);
        } catch (const std::exception&) {
            if (i >= attempts) throw;
            std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
        }
    }
}

void send_message(Socket& sock, const WireMessage& msg) {
    auto frame = encode_frame(msg);
    sock.send_all(frame.data(), frame.size());
}

std::optional<WireMessage> recv_message(Socket& sock) {
    std::uint8_t header[5];
    if (!sock.recv_exact(header, sizeof header)) return std::nullopt;
    std::uint32_t length = get_u32(header);
    std::vector<std::uint8_t> payload(length);
    if (length > 0 && !sock.recv_exact(payload.data(), length))
        throw std::runtime_error("connection closed mid-frame");
    return decode_payload(header[4], payload);
}

}  // namespace ltmv
