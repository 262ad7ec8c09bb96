#pragma once

#include <filesystem>

#include "zkbid/hashing.hpp"
#include "zkbid/rng.hpp"

namespace zkbid {

using Address = std::array<uint8_t, 20>;

struct Account {
    Scalar sk;
    GroupElement pk;
    Address addr;
};

struct AccountSignature {
    Scalar challenge;
    Scalar response;
};

// addr = last 20 bytes of keccak256(compressed pk)
Address derive_address(const GroupElement& pk);

// sk = int(entropy) mod q, mapped away from zero; pk = sk*g
Account account_from_entropy(const std::array<uint8_t, 64>& entropy);

inline Account generate_account(Rng& rng) { return account_from_entropy(rng.bytes<64>()); }

AccountSignature account_sign(const Scalar& sk, const Bytes& msg, Rng& rng);
bool account_verify(const GroupElement& pk, const Bytes& msg, const AccountSignature& sig);

// 64 bytes: challenge || response
std::array<uint8_t, 64> encode_signature(const AccountSignature& sig);
std::optional<AccountSignature> decode_signature(const std::array<uint8_t, 64>& enc);

std::string account_to_json(const Account& acct, bool include_secret);
std::optional<Account> account_from_json(const std::string& text);

void save_account(const std::filesystem::path& file, const Account& acct);
Account load_account(const std::filesystem::path& file);

}  // namespace zkbid
