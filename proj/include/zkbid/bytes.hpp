#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

namespace zkbid {

using Bytes = std::vector<uint8_t>;
using Digest32 = std::array<uint8_t, 32>;

std::string to_hex(const uint8_t* data, size_t len);

inline std::string to_hex(const Bytes& b) { return to_hex(b.data(), b.size()); }

template <size_t N>
std::string to_hex(const std::array<uint8_t, N>& a) {
    return to_hex(a.data(), N);
}

std::optional<Bytes> from_hex(const std::string& s);

template <size_t N>
std::optional<std::array<uint8_t, N>> from_hex_fixed(const std::string& s) {
    auto b = from_hex(s);
    if (!b || b->size() != N) return std::nullopt;
    std::array<uint8_t, N> out;
    std::memcpy(out.data(), b->data(), N);
    return out;
}

// Canonical big-endian serialization helpers used by every wire format.
class ByteWriter {
public:
    void u8(uint8_t v) { buf_.push_back(v); }
    void u16(uint16_t v) {
        buf_.push_back(uint8_t(v >> 8));
        buf_.push_back(uint8_t(v));
    }
    void u32(uint32_t v) {
        for (int i = 3; i >= 0; --i) buf_.push_back(uint8_t(v >> (8 * i)));
    }
    void u64(uint64_t v) {
        for (int i = 7; i >= 0; --i) buf_.push_back(uint8_t(v >> (8 * i)));
    }
    void raw(const uint8_t* p, size_t n) { buf_.insert(buf_.end(), p, p + n); }
    void raw(const Bytes& b) { raw(b.data(), b.size()); }
    template <size_t N>
    void raw(const std::array<uint8_t, N>& a) { raw(a.data(), N); }
    void var_bytes(const Bytes& b) {
        u32(uint32_t(b.size()));
        raw(b);
    }
    void ascii(const std::string& s) { raw(reinterpret_cast<const uint8_t*>(s.data()), s.size()); }

    const Bytes& bytes() const { return buf_; }
    Bytes take() { return std::move(buf_); }

private:
    Bytes buf_;
};

// Reader returning nullopt-style failure through ok(); callers bail out on
// first failure so malformed inputs never abort the process.
class ByteReader {
public:
    explicit ByteReader(const Bytes& b) : p_(b.data()), end_(b.data() + b.size()) {}
    ByteReader(const uint8_t* p, size_t n) : p_(p), end_(p + n) {}

    bool ok() const { return ok_; }
    bool at_end() const { return p_ == end_; }
    size_t remaining() const { return size_t(end_ - p_); }

    uint8_t u8() {
        if (!need(1)) return 0;
        return *p_++;
    }
    uint16_t u16() {
        if (!need(2)) return 0;
        uint16_t v = uint16_t(p_[0]) << 8 | p_[1];
        p_ += 2;
        return v;
    }
    uint32_t u32() {
        if (!need(4)) return 0;
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = v << 8 | p_[i];
        p_ += 4;
        return v;
    }
    uint64_t u64() {
        if (!need(8)) return 0;
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = v << 8 | p_[i];
        p_ += 8;
        return v;
    }
    Bytes raw(size_t n) {
        if (!need(n)) return {};
        Bytes out(p_, p_ + n);
        p_ += n;
        return out;
    }
    template <size_t N>
    std::array<uint8_t, N> fixed() {
        std::array<uint8_t, N> out{};
        if (!need(N)) return out;
        std::memcpy(out.data(), p_, N);
        p_ += N;
        return out;
    }
    Bytes var_bytes() {
        uint32_t n = u32();
        if (!ok_ || n > remaining()) {
            ok_ = false;
            return {};
        }
        return raw(n);
    }

private:
    bool need(size_t n) {
        if (!ok_ || size_t(end_ - p_) < n) {
            ok_ = false;
            return false;
        }
        return true;
    }
    const uint8_t* p_;
    const uint8_t* end_;
    bool ok_ = true;
};

}  // namespace zkbid
