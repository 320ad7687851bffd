#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "vfcsim/core/rng.hpp"

namespace vfc {

/// One offloading payment record.
struct Transaction {
    long id = 0;
    int payer = 0;  // task-vehicle id
    int payee = 0;  // fog-node id
    double amount = 0.0;
    double fee = 0.0;
    // task profile
    double up_bits = 0.0;
    double req_cycles = 0.0;
    double deadline_s = 0.0;
    double latency_s = 0.0;
    double created_s = 0.0;

    nlohmann::ordered_json to_json() const;
    static Transaction from_json(const nlohmann::ordered_json& j);
};

struct Block {
    long height = 0;
    std::string parent_digest;
    std::string digest;
    int validator = 0;
    double timestamp = 0.0;
    std::vector<Transaction> transactions;
    double reward = 0.0;

    /// Content digest over (height, parent, validator, timestamp, tx list) in
    /// declaration order.
    std::string compute_digest() const;
    nlohmann::ordered_json to_json() const;
};

/// FIFO pool with duplicate-id rejection.
class TransactionPool {
public:
    bool submit(const Transaction& tx);
    std::vector<Transaction> take_oldest(size_t count);
    size_t size() const { return pool_.size(); }
    bool empty() const { return pool_.empty(); }
    const std::deque<Transaction>& entries() const { return pool_; }

    void restore(std::deque<Transaction> pool, std::set<long> ids);
    const std::set<long>& seen_ids() const { return ids_; }

private:
    std::deque<Transaction> pool_;
    std::set<long> ids_;  // all ids ever accepted (duplicates rejected forever)
};

struct BlockRejection {
    std::string reason;
};

class Blockchain {
public:
    /// Accepts the block iff the parent digest matches the tip, the height is
    /// consecutive, the digest recomputes and the transaction count is within
    /// the cap. The chain is unchanged on rejection.
    std::optional<BlockRejection> verify_and_append(const Block& block);

    const std::vector<Block>& blocks() const { return blocks_; }
    long height() const { return static_cast<long>(blocks_.size()); }
    std::string tip_digest() const { return blocks_.empty() ? std::string(64, '0') : blocks_.back().digest; }
    double last_block_time() const { return blocks_.empty() ? 0.0 : blocks_.back().timestamp; }
    size_t total_transactions() const;

    std::string to_jsonl() const;

    static constexpr size_t kMaxTransactions = 100;

private:
    std::vector<Block> blocks_;
};

/// Stake-proportional validator sampling over RSUs.
/// Throws std::runtime_error when the total stake is zero.
int select_validator(const std::map<int, double>& stakes, RngStream& rng);

/// Beta-reputation: score = (alpha+1)/(alpha+beta+2).
struct ReputationEntry {
    long alpha = 0;  // verified-correct count
    long beta = 0;   // verified-false count
    double score() const { return (alpha + 1.0) / (alpha + beta + 2.0); }
};

class ReputationLedger {
public:
    explicit ReputationLedger(double blacklist_threshold = 0.3) : threshold_(blacklist_threshold) {}

    double score(int node) const;
    bool blacklisted(int node) const { return score(node) < threshold_; }
    void record_success(int node) { ++entries_[node].alpha; }
    void record_failure(int node) { ++entries_[node].beta; }
    const std::map<int, ReputationEntry>& entries() const { return entries_; }
    std::map<int, ReputationEntry>& entries() { return entries_; }
    double threshold() const { return threshold_; }

private:
    std::map<int, ReputationEntry> entries_;
    double threshold_;
};

enum class AttackKind { IdentitySpoof, AlwaysOn, OnOff };

const char* to_string(AttackKind kind);
AttackKind attack_kind_from_string(const std::string& s);

struct AttackerProfile {
    int node_id = 0;
    AttackKind kind = AttackKind::AlwaysOn;
    double on_period_s = 5.0;   // OnOff only
    double off_period_s = 5.0;  // OnOff only
    double spawn_s = 0.0;
    int spoof_victim = -1;      // IdentitySpoof: id presented at payment time

    /// Whether a result computed at time `now_s` is truthful.
    bool result_correct(double now_s) const;
};

/// Credential registry populated at scenario start. Authentication accepts
/// iff the presented credential digest matches the registered one.
class AuthRegistry {
public:
    void enroll(int node_id, const std::string& credential);
    bool authenticate(int node_id, const std::string& credential) const;
    const std::map<int, std::string>& digests() const { return digests_; }
    void restore(std::map<int, std::string> digests) { digests_ = std::move(digests); }

private:
    std::map<int, std::string> digests_;  // id -> sha256(credential)
};

/// Audit outcome for one completed task result.
struct AuditOutcome {
    bool audited = false;
    bool detected_false = false;  // audited and the result was wrong
    bool payment_released = true;
};

/// With probability p_audit the result is re-verified against ground truth;
/// a verified-false result increments beta and withholds payment, a
/// verified-correct one increments alpha. Unaudited results release payment
/// without touching the reputation, so detection statistics stay meaningful.
AuditOutcome audit_result(int node, bool result_correct, double p_audit, ReputationLedger& ledger,
                          RngStream& rng);

}  // namespace vfc
