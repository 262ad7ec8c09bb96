#include "zkbid/accounts.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "zkbid/errors.hpp"

namespace zkbid {

Address derive_address(const GroupElement& pk) {
    auto enc = secp256k1::encode(pk);
    Digest32 h = keccak256(enc.data(), enc.size());
    Address a;
    std::copy(h.begin() + 12, h.end(), a.begin());
    return a;
}

Account account_from_entropy(const std::array<uint8_t, 64>& entropy) {
    Scalar sk = Scalar::from_bytes_wide(entropy);
    if (sk.is_zero()) sk = Scalar::one();
    Account acct;
    acct.sk = sk;
    acct.pk = secp256k1::mul_base(sk);
    acct.addr = derive_address(acct.pk);
    return acct;
}

namespace {

Scalar signature_challenge(const GroupElement& nonce_point, const GroupElement& pk,
                           const Bytes& msg) {
    ByteWriter w;
    w.raw(secp256k1::encode(nonce_point));
    w.raw(secp256k1::encode(pk));
    w.raw(msg);
    return hash_to_scalar("ZKBID/SIG/v1", w.bytes());
}

}  // namespace

AccountSignature account_sign(const Scalar& sk, const Bytes& msg, Rng& rng) {
    Scalar r = rng.scalar();
    GroupElement rp = secp256k1::mul_base(r);
    GroupElement pk = secp256k1::mul_base(sk);
    Scalar c = signature_challenge(rp, pk, msg);
    return {c, r - c * sk};
}

bool account_verify(const GroupElement& pk, const Bytes& msg, const AccountSignature& sig) {
    if (!secp256k1::valid(pk) || pk.is_infinity()) return false;
    GroupElement rp =
        ec::add(secp256k1::mul_base(sig.response), secp256k1::mul(pk, sig.challenge));
    if (rp.is_infinity()) return false;
    return signature_challenge(rp, pk, msg) == sig.challenge;
}

std::array<uint8_t, 64> encode_signature(const AccountSignature& sig) {
    std::array<uint8_t, 64> out;
    auto c = sig.challenge.to_bytes();
    auto s = sig.response.to_bytes();
    std::copy(c.begin(), c.end(), out.begin());
    std::copy(s.begin(), s.end(), out.begin() + 32);
    return out;
}

std::optional<AccountSignature> decode_signature(const std::array<uint8_t, 64>& enc) {
    std::array<uint8_t, 32> cb, sb;
    std::copy(enc.begin(), enc.begin() + 32, cb.begin());
    std::copy(enc.begin() + 32, enc.end(), sb.begin());
    auto c = Scalar::from_bytes(cb);
    auto s = Scalar::from_bytes(sb);
    if (!c || !s) return std::nullopt;
    return AccountSignature{*c, *s};
}

std::string account_to_json(const Account& acct, bool include_secret) {
    nlohmann::json j;
    j["version"] = 1;
    j["sk"] = include_secret ? to_hex(acct.sk.to_bytes()) : "<redacted>";
    j["pk"] = to_hex(secp256k1::encode(acct.pk));
    j["addr"] = to_hex(acct.addr);
    return j.dump(2);
}

std::optional<Account> account_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.contains("sk") || !j.contains("pk") || !j.contains("addr"))
        return std::nullopt;
    auto skb = from_hex_fixed<32>(j["sk"].get<std::string>());
    auto pkb = from_hex_fixed<33>(j["pk"].get<std::string>());
    auto adb = from_hex_fixed<20>(j["addr"].get<std::string>());
    if (!skb || !pkb || !adb) return std::nullopt;
    auto sk = Scalar::from_bytes(*skb);
    auto pk = secp256k1::decode(*pkb);
    if (!sk || !pk || sk->is_zero()) return std::nullopt;
    if (!ec::eq(secp256k1::mul_base(*sk), *pk)) return std::nullopt;
    Account acct{*sk, *pk, *adb};
    if (derive_address(*pk) != acct.addr) return std::nullopt;
    return acct;
}

void save_account(const std::filesystem::path& file, const Account& acct) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file.string());
    out << account_to_json(acct, true) << "\n";
}

Account load_account(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot read " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto acct = account_from_json(text);
    if (!acct) throw IoError("malformed account file " + file.string());
    return *acct;
}

}  // namespace zkbid
