#include "graphwave/simulator.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <sstream>

namespace graphwave {

ExecMode exec_mode_from_env(ExecMode fallback) {
  const char* value = std::getenv("GRAPHWAVE_SEQ");
  if (value == nullptr || *value == '\0') {
    return fallback;
  }
  return std::strcmp(value, "0") == 0 ? ExecMode::Concurrent : ExecMode::Sequential;
}

namespace {

constexpr unsigned kExchange = 0;
constexpr unsigned kGather = 1;
constexpr unsigned kReduce = 2;

std::string format_group(const std::vector<u64>& group) {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < group.size(); ++k) {
    if (k != 0) {
      out << ',';
    }
    out << group[k];
  }
  out << '}';
  return out.str();
}

std::string describe_call(unsigned kind, Phase phase, ReduceOp op, const char* site) {
  std::ostringstream out;
  switch (kind) {
    case kExchange:
      out << "alltoallv[" << phase_name(phase) << ']';
      break;
    case kGather:
      out << "allgatherv";
      break;
    default:
      out << "allreduce[";
      switch (op) {
        case ReduceOp::Sum:
          out << "sum";
          break;
        case ReduceOp::Max:
          out << "max";
          break;
        case ReduceOp::Or:
          out << "or";
          break;
      }
      out << ']';
      break;
  }
  out << " at " << site;
  return out.str();
}

}  // namespace

struct SimRuntime::Rendezvous {
  std::vector<u64> group;
  unsigned kind = kExchange;
  Phase phase = Phase::Alltoall;
  ReduceOp op = ReduceOp::Sum;
  const char* site = "";
  u64 arrived = 0;
  bool done = false;
  std::vector<bool> present;
  // kExchange: per-member send lists (one vector per destination member).
  std::vector<std::vector<std::vector<u64>>> exchange_send;
  std::vector<std::vector<std::vector<u64>>> exchange_recv;
  // kGather / kReduce: one contribution per member.
  std::vector<std::vector<u64>> contributions;
  std::vector<u64> gathered;
  u64 reduced = 0;
};

const ProcGrid& RankCtx::grid() const { return runtime_->grid(); }

void RankCtx::set_level(u64 level) { runtime_->set_level(rank_, level); }

std::vector<std::vector<u64>> RankCtx::alltoallv(const std::vector<u64>& group,
                                                 std::vector<std::vector<u64>> send,
                                                 const char* site) {
  return runtime_->exchange(rank_, group, std::move(send), Phase::Alltoall, site);
}

std::vector<u64> RankCtx::allgatherv(const std::vector<u64>& group, std::vector<u64> local,
                                     const char* site) {
  return runtime_->gather(rank_, group, std::move(local), site);
}

u64 RankCtx::allreduce(const std::vector<u64>& group, u64 value, ReduceOp op, const char* site) {
  return runtime_->reduce(rank_, group, value, op, site);
}

std::vector<u64> RankCtx::pairwise_exchange(u64 partner, std::vector<u64> payload,
                                            const char* site) {
  std::vector<u64> group;
  if (partner == rank_) {
    group = {rank_};
  } else {
    group = {std::min(rank_, partner), std::max(rank_, partner)};
  }
  std::vector<std::vector<u64>> send(group.size());
  for (std::size_t k = 0; k < group.size(); ++k) {
    if (group[k] == partner) {
      send[k] = std::move(payload);
    }
  }
  std::vector<std::vector<u64>> recv =
      runtime_->exchange(rank_, group, std::move(send), Phase::Transpose, site);
  for (std::size_t k = 0; k < group.size(); ++k) {
    if (group[k] == partner) {
      return std::move(recv[k]);
    }
  }
  return {};
}

std::vector<std::vector<u64>> RankCtx::transpose_exchange(const std::vector<u64>& group,
                                                          std::vector<std::vector<u64>> send,
                                                          const char* site) {
  return runtime_->exchange(rank_, group, std::move(send), Phase::Transpose, site);
}

SimRuntime::SimRuntime(const ProcGrid& grid, ExecMode mode) : grid_(grid), mode_(mode) {
  const u64 p = grid_.size();
  states_.assign(p, RankState::Ready);
  levels_.assign(p, 0);
  rank_errors_.assign(p, nullptr);
  stats_.p_r = grid_.p_r;
  stats_.p_c = grid_.p_c;
  stats_.per_rank.assign(p, PhaseArray{});
}

SimRuntime::~SimRuntime() = default;

void SimRuntime::begin_rank(u64 rank) {
  std::unique_lock<std::mutex> lock(mutex_);
  if (mode_ == ExecMode::Sequential) {
    cv_.wait(lock, [&] { return baton_ == rank || !protocol_error_.empty(); });
    if (!protocol_error_.empty()) {
      throw ProtocolError(protocol_error_);
    }
  }
}

void SimRuntime::finish_rank(u64 rank, std::exception_ptr error) {
  std::unique_lock<std::mutex> lock(mutex_);
  states_[rank] = RankState::Done;
  rank_errors_[rank] = error;
  for (const auto& [group, rv] : pending_) {
    if (!rv->done && std::binary_search(group.begin(), group.end(), rank)) {
      fail(*rv, "rank " + std::to_string(rank) + " finished while " +
                    describe_call(rv->kind, rv->phase, rv->op, rv->site) + " on group " +
                    format_group(group) + " still awaited it");
      break;
    }
  }
  if (mode_ == ExecMode::Sequential) {
    if (baton_ == rank) {
      pass_baton(rank);
    }
  } else {
    check_global_deadlock();
  }
}

CommStats SimRuntime::take_stats() {
  std::unique_lock<std::mutex> lock(mutex_);
  // A rank program's own exception outranks protocol fallout: a throwing
  // rank abandons its groups, and the interesting error is the root cause.
  for (const std::exception_ptr& error : rank_errors_) {
    if (!error) {
      continue;
    }
    try {
      std::rethrow_exception(error);
    } catch (const ProtocolError&) {
      // Detected violation; keep scanning for a primary cause.
    }
  }
  if (!protocol_error_.empty()) {
    throw ProtocolError(protocol_error_);
  }
  for (const std::exception_ptr& error : rank_errors_) {
    if (error) {
      std::rethrow_exception(error);
    }
  }
  return std::move(stats_);
}

void SimRuntime::set_level(u64 rank, u64 level) {
  std::unique_lock<std::mutex> lock(mutex_);
  levels_[rank] = level;
}

void SimRuntime::check_group(u64 rank, const std::vector<u64>& group, const char* site) {
  auto bad = [&](const std::string& why) {
    std::string msg = "rank " + std::to_string(rank) + " at " + site + ": " + why + " (group " +
                      format_group(group) + ")";
    if (protocol_error_.empty()) {
      protocol_error_ = msg;
    }
    cv_.notify_all();
    throw ProtocolError(msg);
  };
  if (group.empty()) {
    bad("collective group is empty");
  }
  for (std::size_t k = 0; k < group.size(); ++k) {
    if (group[k] >= grid_.size()) {
      bad("group member " + std::to_string(group[k]) + " is outside the grid");
    }
    if (k > 0 && group[k] <= group[k - 1]) {
      bad("group ranks must be strictly ascending");
    }
  }
  if (!std::binary_search(group.begin(), group.end(), rank)) {
    bad("caller is not a member of the group");
  }
}

std::shared_ptr<SimRuntime::Rendezvous> SimRuntime::join_rendezvous(
    std::unique_lock<std::mutex>& lock, u64 rank, const std::vector<u64>& group, unsigned kind,
    Phase phase, ReduceOp op, const char* site) {
  (void)lock;
  if (!protocol_error_.empty()) {
    throw ProtocolError(protocol_error_);
  }
  check_group(rank, group, site);
  for (u64 member : group) {
    if (states_[member] == RankState::Done) {
      std::string msg = "rank " + std::to_string(rank) + " called " +
                        describe_call(kind, phase, op, site) + " on group " + format_group(group) +
                        " containing already-finished rank " + std::to_string(member);
      if (protocol_error_.empty()) {
        protocol_error_ = msg;
      }
      cv_.notify_all();
      throw ProtocolError(msg);
    }
  }
  auto it = pending_.find(group);
  if (it == pending_.end()) {
    auto rv = std::make_shared<Rendezvous>();
    rv->group = group;
    rv->kind = kind;
    rv->phase = phase;
    rv->op = op;
    rv->site = site;
    rv->present.assign(group.size(), false);
    rv->exchange_send.resize(group.size());
    rv->exchange_recv.resize(group.size());
    rv->contributions.resize(group.size());
    pending_.emplace(group, rv);
    return rv;
  }
  std::shared_ptr<Rendezvous> rv = it->second;
  if (rv->kind != kind || rv->phase != phase || std::strcmp(rv->site, site) != 0 ||
      (kind == kReduce && rv->op != op)) {
    u64 earlier = rv->group[0];
    for (std::size_t k = 0; k < rv->group.size(); ++k) {
      if (rv->present[k]) {
        earlier = rv->group[k];
        break;
      }
    }
    std::string msg = "collective mismatch on group " + format_group(group) + ": rank " +
                      std::to_string(earlier) + " called " +
                      describe_call(rv->kind, rv->phase, rv->op, rv->site) + " but rank " +
                      std::to_string(rank) + " called " + describe_call(kind, phase, op, site);
    fail(*rv, msg);
    throw ProtocolError(msg);
  }
  return rv;
}

void SimRuntime::fail(Rendezvous& rv, const std::string& message) {
  (void)rv;
  if (protocol_error_.empty()) {
    protocol_error_ = message;
  }
  cv_.notify_all();
}

void SimRuntime::charge(const Rendezvous& rv) {
  const u64 g = rv.group.size();
  auto apply = [&](u64 member_rank, const PhaseCounters& delta) {
    const unsigned ph = static_cast<unsigned>(rv.phase);
    stats_.total[ph] += delta;
    stats_.per_rank[member_rank][ph] += delta;
    const u64 level = levels_[member_rank];
    if (stats_.per_level.size() <= level) {
      stats_.per_level.resize(level + 1);
    }
    stats_.per_level[level][ph] += delta;
  };

  if (rv.kind == kExchange) {
    for (u64 k = 0; k < g; ++k) {
      PhaseCounters d;
      for (u64 j = 0; j < g; ++j) {
        const u64 out_words = rv.exchange_send[k][j].size();
        const u64 in_words = rv.exchange_send[j][k].size();
        d.input_words += out_words;
        if (j == k) {
          d.self_words += out_words;
        } else {
          d.words_sent += out_words;
          d.words_recv += in_words;
          if (out_words > 0) {
            d.messages += 1;
          }
        }
      }
      apply(rv.group[k], d);
    }
    return;
  }

  if (rv.kind == kGather) {
    u64 total = 0;
    for (const std::vector<u64>& c : rv.contributions) {
      total += c.size();
    }
    for (u64 k = 0; k < g; ++k) {
      const u64 own = rv.contributions[k].size();
      PhaseCounters d;
      d.input_words = own;
      d.self_words = own;
      d.words_sent = own * (g - 1);
      d.words_recv = total - own;
      d.messages = own > 0 ? g - 1 : 0;
      apply(rv.group[k], d);
    }
    return;
  }

  for (u64 k = 0; k < g; ++k) {
    PhaseCounters d;
    d.input_words = 1;
    if (g == 1) {
      d.self_words = 1;
    } else {
      d.words_sent = 1;
      d.words_recv = 1;
      d.messages = 1;
    }
    apply(rv.group[k], d);
  }
}

void SimRuntime::complete(Rendezvous& rv) {
  const u64 g = rv.group.size();
  charge(rv);
  if (rv.kind == kExchange) {
    for (u64 k = 0; k < g; ++k) {
      rv.exchange_recv[k].resize(g);
      for (u64 j = 0; j < g; ++j) {
        rv.exchange_recv[k][j] = std::move(rv.exchange_send[j][k]);
      }
    }
  } else if (rv.kind == kGather) {
    u64 total = 0;
    for (const std::vector<u64>& c : rv.contributions) {
      total += c.size();
    }
    rv.gathered.reserve(total);
    for (const std::vector<u64>& c : rv.contributions) {
      rv.gathered.insert(rv.gathered.end(), c.begin(), c.end());
    }
  } else {
    u64 acc = rv.contributions[0][0];
    for (u64 k = 1; k < g; ++k) {
      const u64 v = rv.contributions[k][0];
      switch (rv.op) {
        case ReduceOp::Sum:
          acc += v;
          break;
        case ReduceOp::Max:
          acc = std::max(acc, v);
          break;
        case ReduceOp::Or:
          acc = (acc != 0 || v != 0) ? 1 : 0;
          break;
      }
    }
    if (rv.op == ReduceOp::Or) {
      acc = acc != 0 ? 1 : 0;
    }
    rv.reduced = acc;
  }
  rv.done = true;
  for (u64 member : rv.group) {
    if (states_[member] == RankState::Blocked) {
      states_[member] = RankState::Ready;
    }
  }
  pending_.erase(rv.group);
  cv_.notify_all();
}

void SimRuntime::wait_member(std::unique_lock<std::mutex>& lock, u64 rank, Rendezvous& rv) {
  states_[rank] = RankState::Blocked;
  if (mode_ == ExecMode::Sequential) {
    pass_baton(rank);
  } else {
    check_global_deadlock();
  }
  cv_.wait(lock, [&] {
    if (!protocol_error_.empty()) {
      return true;
    }
    return rv.done && (mode_ == ExecMode::Concurrent || baton_ == rank);
  });
  if (!rv.done && !protocol_error_.empty()) {
    throw ProtocolError(protocol_error_);
  }
  states_[rank] = RankState::Ready;
}

void SimRuntime::pass_baton(u64 from) {
  const u64 p = grid_.size();
  for (u64 step = 1; step <= p; ++step) {
    const u64 cand = (from + step) % p;
    if (states_[cand] == RankState::Ready) {
      baton_ = cand;
      cv_.notify_all();
      return;
    }
  }
  check_global_deadlock();
}

void SimRuntime::check_global_deadlock() {
  if (!protocol_error_.empty()) {
    return;
  }
  u64 blocked = 0;
  for (RankState s : states_) {
    if (s == RankState::Ready) {
      return;
    }
    if (s == RankState::Blocked) {
      ++blocked;
    }
  }
  if (blocked == 0) {
    return;
  }
  std::ostringstream out;
  out << "deadlock: every unfinished rank is blocked in a collective:";
  for (const auto& [group, rv] : pending_) {
    if (rv->done) {
      continue;
    }
    for (std::size_t k = 0; k < rv->group.size(); ++k) {
      if (rv->present[k]) {
        out << " rank " << rv->group[k] << " in "
            << describe_call(rv->kind, rv->phase, rv->op, rv->site) << " on group "
            << format_group(group) << " (" << rv->arrived << '/' << group.size() << " arrived);";
      }
    }
  }
  protocol_error_ = out.str();
  cv_.notify_all();
}

std::vector<std::vector<u64>> SimRuntime::exchange(u64 rank, const std::vector<u64>& group,
                                                   std::vector<std::vector<u64>> send, Phase phase,
                                                   const char* site) {
  std::unique_lock<std::mutex> lock(mutex_);
  std::shared_ptr<Rendezvous> rv = join_rendezvous(lock, rank, group, kExchange, phase,
                                                   ReduceOp::Sum, site);
  if (send.size() != group.size()) {
    std::string msg = "rank " + std::to_string(rank) + " at " + site + ": alltoallv send list has " +
                      std::to_string(send.size()) + " buffers for a group of " +
                      std::to_string(group.size());
    fail(*rv, msg);
    throw ProtocolError(msg);
  }
  const u64 idx =
      static_cast<u64>(std::lower_bound(group.begin(), group.end(), rank) - group.begin());
  rv->exchange_send[idx] = std::move(send);
  rv->present[idx] = true;
  rv->arrived += 1;
  if (rv->arrived == rv->group.size()) {
    complete(*rv);
  } else {
    wait_member(lock, rank, *rv);
  }
  return std::move(rv->exchange_recv[idx]);
}

std::vector<u64> SimRuntime::gather(u64 rank, const std::vector<u64>& group,
                                    std::vector<u64> local, const char* site) {
  std::unique_lock<std::mutex> lock(mutex_);
  std::shared_ptr<Rendezvous> rv =
      join_rendezvous(lock, rank, group, kGather, Phase::Allgather, ReduceOp::Sum, site);
  const u64 idx =
      static_cast<u64>(std::lower_bound(group.begin(), group.end(), rank) - group.begin());
  rv->contributions[idx] = std::move(local);
  rv->present[idx] = true;
  rv->arrived += 1;
  if (rv->arrived == rv->group.size()) {
    complete(*rv);
  } else {
    wait_member(lock, rank, *rv);
  }
  return rv->gathered;
}

u64 SimRuntime::reduce(u64 rank, const std::vector<u64>& group, u64 value, ReduceOp op,
                       const char* site) {
  std::unique_lock<std::mutex> lock(mutex_);
  std::shared_ptr<Rendezvous> rv =
      join_rendezvous(lock, rank, group, kReduce, Phase::Allreduce, op, site);
  const u64 idx =
      static_cast<u64>(std::lower_bound(group.begin(), group.end(), rank) - group.begin());
  rv->contributions[idx] = {value};
  rv->present[idx] = true;
  rv->arrived += 1;
  if (rv->arrived == rv->group.size()) {
    complete(*rv);
  } else {
    wait_member(lock, rank, *rv);
  }
  return rv->reduced;
}

}  // namespace graphwave
