#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "ltmv/rng.hpp"
#include "ltmv/wire.hpp"

using namespace ltmv;

namespace {

std::vector<std::uint8_t> bytes(std::initializer_list<unsigned> vals) {
    return std::vector<std::uint8_t>(vals.begin(), vals.end());
}

WireMessage random_message(Rng& rng) {
    switch (rng.uniform_below(6)) {
        case 0:
            return SetupMsg{std::uint32_t(rng.next_u64()), rng.next_u64(), rng.next_u64()};
        case 1: {
            VectorMsg m;
            std::uint64_t n = rng.uniform_below(40);
            for (std::uint64_t i = 0; i < n; ++i) m.x.push_back(rng.normal());
            return m;
        }
        case 2:
            return ResultMsg{rng.next_u64(), rng.normal() * 1e6};
        case 3:
            return ProgressMsg{rng.next_u64()};
        case 4:
            return DoneMsg{};
        default: {
            std::string text;
            std::uint64_t n = rng.uniform_below(60);
            for (std::uint64_t i = 0; i < n; ++i)
                text.push_back(char('a' + rng.uniform_below(26)));
            return ErrorMsg{std::move(text)};
        }
    }
}

}  // namespace

TEST_CASE("frame types map variant order to 1..6") {
    CHECK(frame_type(SetupMsg{}) == kSetupType);
    CHECK(frame_type(VectorMsg{}) == kVectorType);
    CHECK(frame_type(ResultMsg{}) == kResultType);
    CHECK(frame_type(ProgressMsg{}) == kProgressType);
    CHECK(frame_type(DoneMsg{}) == kDoneType);
    CHECK(frame_type(ErrorMsg{}) == kErrorType);
}

TEST_CASE("golden frame: setup") {
    auto frame = encode_frame(SetupMsg{7, 0x0102030405060708ull, 0x1122334455667788ull});
    CHECK(frame == bytes({0x14, 0x00, 0x00, 0x00,  // payload length 20
                          0x01,                    // type
                          0x07, 0x00, 0x00, 0x00,  // worker id
                          0x08, 0x07, 0x06, 0x05, 0x04, 0x03, 0x02, 0x01,
                          0x88, 0x77, 0x66, 0x55, 0x44, 0x33, 0x22, 0x11}));
}

TEST_CASE("golden frame: vector of one") {
    auto frame = encode_frame(VectorMsg{{1.0}});
    CHECK(frame == bytes({0x10, 0x00, 0x00, 0x00, 0x02,
                          0x01, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
                          0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xf0, 0x3f}));
}

TEST_CASE("golden frame: result") {
    auto frame = encode_frame(ResultMsg{3, 1.5});
    CHECK(frame == bytes({0x10, 0x00, 0x00, 0x00, 0x03,
                          0x03, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
                          0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xf8, 0x3f}));
}

TEST_CASE("golden frame: progress, done, error") {
    CHECK(encode_frame(ProgressMsg{513}) ==
          bytes({0x08, 0x00, 0x00, 0x00, 0x04,
                 0x01, 0x02, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}));
    CHECK(encode_frame(DoneMsg{}) == bytes({0x00, 0x00, 0x00, 0x00, 0x05}));
    CHECK(encode_frame(ErrorMsg{"hi"}) ==
          bytes({0x06, 0x00, 0x00, 0x00, 0x06,
                 0x02, 0x00, 0x00, 0x00, 'h', 'i'}));
}

TEST_CASE("round trip is byte-exact over random messages") {
    Rng rng(20240817);
    for (int i = 0; i < 10000; ++i) {
        WireMessage msg = random_message(rng);
        auto frame = encode_frame(msg);
        auto [decoded, used] = decode_frame(frame);
        CHECK(used == frame.size());
        CHECK(decoded == msg);
        // Re-encoding the decoded message reproduces the original bytes.
        CHECK(encode_frame(decoded) == frame);
    }
}

TEST_CASE("decode_frame consumes one frame from a stream") {
    std::vector<std::uint8_t> stream;
    std::vector<WireMessage> sent = {ResultMsg{1, 2.5}, DoneMsg{},
                                     ErrorMsg{"late"}, ProgressMsg{42}};
    for (const auto& msg : sent) {
        auto frame = encode_frame(msg);
        stream.insert(stream.end(), frame.begin(), frame.end());
    }
    std::size_t offset = 0;
    for (const auto& expected : sent) {
        auto [msg, used] = decode_frame(
            std::span(stream.data() + offset, stream.size() - offset));
        CHECK(msg == expected);
        offset += used;
    }
    CHECK(offset == stream.size());
}

TEST_CASE("malformed frames are rejected") {
    // Header shorter than 5 bytes.
    auto tiny = bytes({0x00, 0x00, 0x00, 0x00});
    CHECK_THROWS_AS(decode_frame(tiny), std::runtime_error);

    // Declared length exceeds the available bytes.
    auto truncated = encode_frame(ResultMsg{1, 2.0});
    truncated.pop_back();
    CHECK_THROWS_AS(decode_frame(truncated), std::runtime_error);

    // Unknown type byte.
    auto unknown = bytes({0x00, 0x00, 0x00, 0x00, 0x09});
    CHECK_THROWS_AS(decode_frame(unknown), std::runtime_error);

    // Wrong payload sizes per type.
    CHECK_THROWS_AS(decode_payload(kSetupType, bytes({1, 2, 3})), std::runtime_error);
    CHECK_THROWS_AS(decode_payload(kResultType, bytes({1, 2, 3, 4, 5, 6, 7, 8})),
                    std::runtime_error);
    CHECK_THROWS_AS(decode_payload(kProgressType, {}), std::runtime_error);
    CHECK_THROWS_AS(decode_payload(kDoneType, bytes({0})), std::runtime_error);

    // Vector whose element count disagrees with the payload length.
    auto vec = bytes({0x02, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,  // n = 2
                      0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0xf0, 0x3f});
    CHECK_THROWS_AS(decode_payload(kVectorType, vec), std::runtime_error);

    // Error text length disagreeing with the payload length.
    auto err = bytes({0x05, 0x00, 0x00, 0x00, 'h', 'i'});
    CHECK_THROWS_AS(decode_payload(kErrorType, err), std::runtime_error);
}
