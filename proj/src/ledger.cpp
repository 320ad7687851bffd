#include "vfcsim/ledger/ledger.hpp"

#include <cmath>
#include <stdexcept>

#include "vfcsim/ledger/sha256.hpp"

namespace vfc {

nlohmann::ordered_json Transaction::to_json() const {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["payer"] = payer;
    j["payee"] = payee;
    j["amount"] = amount;
    j["fee"] = fee;
    j["up_bits"] = up_bits;
    j["req_cycles"] = req_cycles;
    j["deadline_s"] = deadline_s;
    j["latency_s"] = latency_s;
    j["created_s"] = created_s;
    return j;
}

Transaction Transaction::from_json(const nlohmann::ordered_json& j) {
    Transaction tx;
    tx.id = j.at("id").get<long>();
    tx.payer = j.at("payer").get<int>();
    tx.payee = j.at("payee").get<int>();
    tx.amount = j.at("amount").get<double>();
    tx.fee = j.at("fee").get<double>();
    tx.up_bits = j.at("up_bits").get<double>();
    tx.req_cycles = j.at("req_cycles").get<double>();
    tx.deadline_s = j.at("deadline_s").get<double>();
    tx.latency_s = j.at("latency_s").get<double>();
    tx.created_s = j.at("created_s").get<double>();
    return tx;
}

std::string Block::compute_digest() const {
    nlohmann::ordered_json j;
    j["height"] = height;
    j["parent"] = parent_digest;
    j["validator"] = validator;
    j["timestamp"] = timestamp;
    auto txs = nlohmann::ordered_json::array();
    for (const auto& tx : transactions) txs.push_back(tx.to_json());
    j["transactions"] = txs;
    return sha256_hex(j.dump());
}

nlohmann::ordered_json Block::to_json() const {
    nlohmann::ordered_json j;
    j["height"] = height;
    j["parent"] = parent_digest;
    j["digest"] = digest;
    j["validator"] = validator;
    j["timestamp"] = timestamp;
    auto txs = nlohmann::ordered_json::array();
    for (const auto& tx : transactions) txs.push_back(tx.to_json());
    j["transactions"] = txs;
    j["reward"] = reward;
    return j;
}

bool TransactionPool::submit(const Transaction& tx) {
    if (!ids_.insert(tx.id).second) return false;
    pool_.push_back(tx);
    return true;
}

std::vector<Transaction> TransactionPool::take_oldest(size_t count) {
    std::vector<Transaction> out;
    while (!pool_.empty() && out.size() < count) {
        out.push_back(pool_.front());
        pool_.pop_front();
    }
    return out;
}

void TransactionPool::restore(std::deque<Transaction> pool, std::set<long> ids) {
    pool_ = std::move(pool);
    ids_ = std::move(ids);
}

std::optional<BlockRejection> Blockchain::verify_and_append(const Block& block) {
    if (block.height != height()) return BlockRejection{"height gap"};
    if (block.parent_digest != tip_digest()) return BlockRejection{"parent digest mismatch"};
    if (block.transactions.size() > kMaxTransactions) return BlockRejection{"too many transactions"};
    if (block.digest != block.compute_digest()) return BlockRejection{"digest mismatch"};
    blocks_.push_back(block);
    return std::nullopt;
}

size_t Blockchain::total_transactions() const {
    size_t n = 0;
    for (const auto& b : blocks_) n += b.transactions.size();
    return n;
}

std::string Blockchain::to_jsonl() const {
    std::string out;
    for (const auto& b : blocks_) {
        out += b.to_json().dump();
        out += '\n';
    }
    return out;
}

int select_validator(const std::map<int, double>& stakes, RngStream& rng) {
    double total = 0.0;
    for (const auto& [id, stake] : stakes) {
        if (stake > 0.0) total += stake;
    }
    if (total <= 0.0) throw std::runtime_error("no eligible validator: zero total stake");
    double pick = rng.uniform() * total;
    int last = -1;
    for (const auto& [id, stake] : stakes) {
        if (stake <= 0.0) continue;
        last = id;
        pick -= stake;
        if (pick <= 0.0) return id;
    }
    return last;
}

double ReputationLedger::score(int node) const {
    auto it = entries_.find(node);
    return it == entries_.end() ? ReputationEntry{}.score() : it->second.score();
}

const char* to_string(AttackKind kind) {
    switch (kind) {
        case AttackKind::IdentitySpoof: return "identity_spoof";
        case AttackKind::AlwaysOn: return "always_on";
        case AttackKind::OnOff: return "on_off";
    }
    return "unknown";
}

AttackKind attack_kind_from_string(const std::string& s) {
    if (s == "identity_spoof") return AttackKind::IdentitySpoof;
    if (s == "always_on") return AttackKind::AlwaysOn;
    if (s == "on_off") return AttackKind::OnOff;
    throw std::invalid_argument("unknown attack kind: " + s);
}

bool AttackerProfile::result_correct(double now_s) const {
    switch (kind) {
        case AttackKind::IdentitySpoof:
            return true;  // results are genuine; the fraud is in the payment claim
        case AttackKind::AlwaysOn:
            return false;
        case AttackKind::OnOff: {
            const double cycle = on_period_s + off_period_s;
            const double phase = std::fmod(std::max(0.0, now_s - spawn_s), cycle);
            return phase < on_period_s;
        }
    }
    return true;
}

void AuthRegistry::enroll(int node_id, const std::string& credential) {
    digests_[node_id] = sha256_hex(credential);
}

bool AuthRegistry::authenticate(int node_id, const std::string& credential) const {
    auto it = digests_.find(node_id);
    if (it == digests_.end()) return false;
    return it->second == sha256_hex(credential);
}

AuditOutcome audit_result(int node, bool result_correct, double p_audit, ReputationLedger& ledger,
                          RngStream& rng) {
    AuditOutcome out;
    if (p_audit < 0.0 || p_audit > 1.0) throw std::invalid_argument("p_audit must be in [0,1]");
    out.audited = rng.uniform() < p_audit;
    if (out.audited && !result_correct) {
        out.detected_false = true;
        out.payment_released = false;
        ledger.record_failure(node);
    } else if (out.audited) {
        ledger.record_success(node);
    }
    return out;
}

}  // namespace vfc
