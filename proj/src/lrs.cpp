#include "zkbid/lrs.hpp"

#include <nlohmann/json.hpp>

#include "zkbid/errors.hpp"

namespace zkbid::lrs {

namespace {

const std::string kTag = "ZKBID/LRS/v1";

Bytes point_bytes(const GroupElement& p) {
    auto enc = secp256k1::encode(p);
    return Bytes(enc.begin(), enc.end());
}

// c_{j+1} = H_s(ring || image || msg || L_j || R_j)
Scalar challenge(const Bytes& ring_msg_prefix, const GroupElement& l, const GroupElement& r) {
    Bytes data = ring_msg_prefix;
    auto le = secp256k1::encode(l);
    auto re = secp256k1::encode(r);
    data.insert(data.end(), le.begin(), le.end());
    data.insert(data.end(), re.begin(), re.end());
    return hash_to_scalar(kTag, data);
}

Bytes challenge_prefix(const Ring& ring, const GroupElement& image, const Bytes& msg) {
    ByteWriter w;
    w.raw(ring_encode(ring));
    w.raw(secp256k1::encode(image));
    w.u32(static_cast<uint32_t>(msg.size()));
    w.raw(msg);
    return w.take();
}

}  // namespace

GroupElement key_image(const Account& acct) {
    if (!(ec::eq(secp256k1::mul_base(acct.sk), acct.pk)))
        throw KeyMismatch("secret key does not produce this public key");
    return secp256k1::mul(hash_to_point(point_bytes(acct.pk)), acct.sk);
}

Bytes RingSignature::encode() const {
    ByteWriter w;
    w.raw(secp256k1::encode(image));
    w.raw(c1.to_bytes());
    w.u32(static_cast<uint32_t>(s.size()));
    for (const auto& si : s) w.raw(si.to_bytes());
    return w.take();
}

std::optional<RingSignature> RingSignature::decode(const Bytes& data) {
    ByteReader r(data);
    RingSignature sig;
    auto img = secp256k1::decode(r.fixed<33>());
    if (!r.ok() || !img || img->is_infinity()) return std::nullopt;
    sig.image = *img;
    auto c = Scalar::from_bytes(r.fixed<32>());
    if (!r.ok() || !c) return std::nullopt;
    sig.c1 = *c;
    uint32_t n = r.u32();
    if (!r.ok() || n == 0 || uint64_t(n) * 32 != r.remaining()) return std::nullopt;
    sig.s.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
        auto si = Scalar::from_bytes(r.fixed<32>());
        if (!r.ok() || !si) return std::nullopt;
        sig.s.push_back(*si);
    }
    return sig;
}

std::string RingSignature::to_json() const {
    nlohmann::json j;
    j["version"] = 1;
    j["key_image"] = to_hex(secp256k1::encode(image));
    j["c1"] = to_hex(c1.to_bytes());
    auto& arr = j["s"] = nlohmann::json::array();
    for (const auto& si : s) arr.push_back(to_hex(si.to_bytes()));
    return j.dump(2);
}

std::optional<RingSignature> RingSignature::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (!j.is_object() || j.value("version", 0) != 1 || !j["key_image"].is_string() ||
        !j["c1"].is_string() || !j["s"].is_array() || j["s"].empty())
        return std::nullopt;
    RingSignature sig;
    auto img_bytes = from_hex_fixed<33>(j["key_image"].get<std::string>());
    if (!img_bytes) return std::nullopt;
    auto img = secp256k1::decode(*img_bytes);
    if (!img || img->is_infinity()) return std::nullopt;
    sig.image = *img;
    auto c_bytes = from_hex_fixed<32>(j["c1"].get<std::string>());
    if (!c_bytes) return std::nullopt;
    auto c = Scalar::from_bytes(*c_bytes);
    if (!c) return std::nullopt;
    sig.c1 = *c;
    for (const auto& e : j["s"]) {
        if (!e.is_string()) return std::nullopt;
        auto sb = from_hex_fixed<32>(e.get<std::string>());
        if (!sb) return std::nullopt;
        auto si = Scalar::from_bytes(*sb);
        if (!si) return std::nullopt;
        sig.s.push_back(*si);
    }
    return sig;
}

Bytes ring_encode(const Ring& ring) {
    ByteWriter w;
    w.u32(static_cast<uint32_t>(ring.size()));
    for (const auto& pk : ring) w.raw(secp256k1::encode(pk));
    return w.take();
}

std::optional<Ring> ring_decode(const Bytes& data) {
    ByteReader r(data);
    uint32_t n = r.u32();
    if (!r.ok() || uint64_t(n) * 33 != r.remaining()) return std::nullopt;
    Ring ring;
    ring.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
        auto pk = secp256k1::decode(r.fixed<33>());
        if (!r.ok() || !pk || pk->is_infinity()) return std::nullopt;
        ring.push_back(*pk);
    }
    return ring;
}

RingSignature ring_sign(const Ring& ring, const Account& signer, const Bytes& msg, Rng& rng) {
    const size_t n = ring.size();
    size_t pos = n;
    for (size_t i = 0; i < n; ++i)
        if (ec::eq(ring[i], signer.pk)) {
            pos = i;
            break;
        }
    if (pos == n) throw SignerNotInRing("signer's public key is not a ring member");

    GroupElement image = key_image(signer);
    Bytes prefix = challenge_prefix(ring, image, msg);
    std::vector<GroupElement> h(n);
    for (size_t i = 0; i < n; ++i) h[i] = hash_to_point(point_bytes(ring[i]));

    std::vector<Scalar> s(n), c(n);
    Scalar u = rng.scalar();
    Scalar next = challenge(prefix, secp256k1::mul_base(u), secp256k1::mul(h[pos], u));
    for (size_t step = 1; step <= n; ++step) {
        size_t j = (pos + step) % n;
        c[j] = next;
        if (j == pos) break;  // chain closed; the slot below completes it
        s[j] = rng.scalar();
        GroupElement l = ec::add(secp256k1::mul_base(s[j]), secp256k1::mul(ring[j], c[j]));
        GroupElement r = ec::add(secp256k1::mul(h[j], s[j]), secp256k1::mul(image, c[j]));
        next = challenge(prefix, l, r);
    }
    s[pos] = u - c[pos] * signer.sk;

    RingSignature sig;
    sig.image = image;
    sig.c1 = c[0];
    sig.s = std::move(s);
    return sig;
}

bool ring_verify_traced(const Ring& ring, const Bytes& msg, const RingSignature& sig,
                        std::vector<Scalar>* challenges) {
    const size_t n = ring.size();
    if (n == 0 || sig.s.size() != n) return false;
    if (sig.image.is_infinity() || !secp256k1::valid(sig.image)) return false;
    for (const auto& pk : ring)
        if (pk.is_infinity() || !secp256k1::valid(pk)) return false;

    Bytes prefix = challenge_prefix(ring, sig.image, msg);
    if (challenges) challenges->clear();
    Scalar c = sig.c1;
    for (size_t j = 0; j < n; ++j) {
        GroupElement l = ec::add(secp256k1::mul_base(sig.s[j]), secp256k1::mul(ring[j], c));
        GroupElement r = ec::add(secp256k1::mul(hash_to_point(point_bytes(ring[j])), sig.s[j]),
                                 secp256k1::mul(sig.image, c));
        c = challenge(prefix, l, r);
        if (challenges) challenges->push_back(c);
    }
    return c == sig.c1;
}

bool ring_verify(const Ring& ring, const Bytes& msg, const RingSignature& sig) {
    return ring_verify_traced(ring, msg, sig, nullptr);
}

bool linked(const RingSignature& a, const RingSignature& b) {
    return secp256k1::encode(a.image) == secp256k1::encode(b.image);
}

Ring sample_ring(const std::vector<GroupElement>& registry, const GroupElement& own, size_t n,
                 Rng& rng) {
    auto own_enc = secp256k1::encode(own);
    std::vector<GroupElement> decoys;
    decoys.reserve(registry.size());
    bool own_registered = false;
    for (const auto& pk : registry) {
        if (secp256k1::encode(pk) == own_enc)
            own_registered = true;
        else
            decoys.push_back(pk);
    }
    if (!own_registered) throw SignerNotInRing("own key is not registered");
    if (n == 0 || decoys.size() + 1 < n)
        throw InsufficientAnonymitySet("registry smaller than the requested ring");

    // partial Fisher-Yates for n-1 distinct decoys
    for (size_t i = 0; i + 1 < n; ++i)
        std::swap(decoys[i], decoys[i + rng.below(decoys.size() - i)]);
    decoys.resize(n - 1);

    size_t own_pos = rng.below(n);
    Ring ring(decoys.begin(), decoys.begin() + own_pos);
    ring.push_back(own);
    ring.insert(ring.end(), decoys.begin() + own_pos, decoys.end());
    return ring;
}

}  // namespace zkbid::lrs
