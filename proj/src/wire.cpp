#include "ltmv/wire.hpp"

#include <stdexcept>

#include "ltmv/binio.hpp"

namespace ltmv {

namespace {

[[noreturn]] void malformed(const char* what) {
    throw std::runtime_error(std::string("wire: ") + what);
}

}  // namespace

std::uint8_t frame_type(const WireMessage& msg) {
    return static_cast<std::uint8_t>(msg.index() + 1);
}

std::vector<std::uint8_t> encode_frame(const WireMessage& msg) {
    std::vector<std::uint8_t> payload;
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SetupMsg>) {
                put_u32(payload, m.worker_id);
                put_u64(payload, m.rows);
                put_u64(payload, m.cols);
            } else if constexpr (std::is_same_v<T, VectorMsg>) {
                put_u64(payload, m.x.size());
                for (double v : m.x) put_f64(payload, v);
            } else if constexpr (std::is_same_v<T, ResultMsg>) {
                put_u64(payload, m.encoded_index);
                put_f64(payload, m.value);
            } else if constexpr (std::is_same_v<T, ProgressMsg>) {
                put_u64(payload, m.count);
            } else if constexpr (std::is_same_v<T, DoneMsg>) {
                // empty payload
            } else if constexpr (std::is_same_v<T, ErrorMsg>) {
                put_u32(payload, static_cast<std::uint32_t>(m.text.size()));
                payload.insert(payload.end(), m.text.begin(), m.text.end());
            }
        },
        msg);

    std::vector<std::uint8_t> frame;
    frame.reserve(5 + payload.size());
    put_u32(frame, static_cast<std::uint32_t>(payload.size()));
    frame.push_back(frame_type(msg));
    frame.insert(frame.end(), payload.begin(), payload.end());
    return frame;
}

WireMessage decode_payload(std::uint8_t type, std::span<const std::uint8_t> p) {
    switch (type) {
        case kSetupType: {
            if (p.size() != 20) malformed("setup payload must be 20 bytes");
            return SetupMsg{get_u32(p.data()), get_u64(p.data() + 4),
                            get_u64(p.data() + 12)};
        }
        case kVectorType: {
            if (p.size() < 8) malformed("vector payload shorter than its header");
            std::uint64_t n = get_u64(p.data());
            if (p.size() != 8 + 8 * n) malformed("vector payload length mismatch");
            VectorMsg m;
            m.x.reserve(n);
            for (std::uint64_t i = 0; i < n; ++i) m.x.push_back(get_f64(p.data() + 8 + 8 * i));
            return m;
        }
        case kResultType: {
            if (p.size() != 16) malformed("result payload must be 16 bytes");
            return ResultMsg{get_u64(p.data()), get_f64(p.data() + 8)};
        }
        case kProgressType: {
            if (p.size() != 8) malformed("progress payload must be 8 bytes");
            return ProgressMsg{get_u64(p.data())};
        }
        case kDoneType: {
            if (!p.empty()) malformed("done carries no payload");
            return DoneMsg{};
        }
        case kErrorType: {
            if (p.size() < 4) malformed("error payload shorter than its header");
            std::uint32_t len = get_u32(p.data());
            if (p.size() != 4 + std::size_t{len}) malformed("error payload length mismatch");
            return ErrorMsg{std::string(p.begin() + 4, p.end())};
        }
        default:
            malformed("unknown frame type");
    }
}

std::pair<WireMessage, std::size_t> decode_frame(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 5) malformed("frame header incomplete");
    std::uint32_t length = get_u32(bytes.data());
    if (bytes.size() < 5 + std::size_t{length}) malformed("frame body incomplete");
    WireMessage msg = decode_payload(bytes[4], bytes.subspan(5, length));
    return {std::move(msg), 5 + std::size_t{length}};
}

}  // namespace ltmv
