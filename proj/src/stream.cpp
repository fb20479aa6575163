#include "semiarray/stream.hpp"

#include <cmath>

namespace semiarray {

std::string stream_mode_name(StreamMode m) {
  return m == StreamMode::FixedM ? "fixed-m" : "fixed-t";
}

StreamMode parse_stream_mode(const std::string& name) {
  if (name == "fixed-m") return StreamMode::FixedM;
  if (name == "fixed-t") return StreamMode::FixedT;
  throw std::invalid_argument("unknown stream mode '" + name +
                              "' (valid: fixed-m, fixed-t)");
}

StreamEngine::StreamEngine(StreamConfig cfg) : cfg_(cfg) {
  if (cfg_.mode == StreamMode::FixedM && cfg_.m < 1) {
    throw std::invalid_argument("stream config: fixed-m requires m >= 1");
  }
  if (cfg_.mode == StreamMode::FixedT && !(cfg_.t > 0.0)) {
    throw std::invalid_argument("stream config: fixed-t requires t > 0");
  }
  if (cfg_.levels < 1) {
    throw std::invalid_argument("stream config: levels must be >= 1");
  }
  if (cfg_.buffer_capacity < 1) {
    throw std::invalid_argument("stream config: buffer_capacity must be >= 1");
  }
  rings_.assign(cfg_.levels, RingBuffer(cfg_.buffer_capacity));
  pending_.resize(cfg_.levels);
  next_index_.assign(cfg_.levels, 0);
}

void StreamEngine::open_window() {
  open_ = WindowedMatrix{};
  open_active_ = true;
}

void StreamEngine::complete_window(WindowedMatrix w,
                                   std::vector<WindowedMatrix>& out) {
  std::size_t level = w.level;
  rings_[level].push(w);
  out.push_back(w);
  if (level + 1 >= cfg_.levels) return;

  if (!pending_[level]) {
    pending_[level] = std::move(w);
    return;
  }
  WindowedMatrix left = std::move(*pending_[level]);
  pending_[level].reset();

  WindowedMatrix merged;
  merged.level = level + 1;
  merged.index = next_index_[level + 1]++;
  merged.matrix = ewise_add(left.matrix, w.matrix);
  merged.event_count = left.event_count + w.event_count;
  merged.span.first_ordinal =
      left.event_count > 0 ? left.span.first_ordinal : w.span.first_ordinal;
  merged.span.last_ordinal =
      w.event_count > 0 ? w.span.last_ordinal : left.span.last_ordinal;
  merged.span.first_timestamp = left.span.first_timestamp;
  merged.span.last_timestamp = w.span.last_timestamp;
  complete_window(std::move(merged), out);
}

void StreamEngine::close_open_window(std::vector<WindowedMatrix>& out) {
  open_.index = next_index_[0]++;
  open_active_ = false;
  complete_window(std::move(open_), out);
}

std::vector<WindowedMatrix> StreamEngine::ingest(const StreamEvent& e) {
  std::vector<WindowedMatrix> out;

  if (cfg_.mode == StreamMode::FixedT) {
    if (saw_event_ && e.timestamp < last_timestamp_) {
      throw StreamOrderError(
          "decreasing timestamp in fixed-t mode: event (" + key_to_string(e.src) +
          ", " + key_to_string(e.dst) + ", " + std::to_string(e.count) + ", " +
          std::to_string(e.timestamp) + ") after timestamp " +
          std::to_string(last_timestamp_));
    }
    auto slot = static_cast<std::int64_t>(std::floor(e.timestamp / cfg_.t));
    if (!open_active_) {
      open_window();
      open_slot_ = slot;
      open_.span.first_timestamp = static_cast<double>(slot) * cfg_.t;
      open_.span.last_timestamp = static_cast<double>(slot + 1) * cfg_.t;
    } else if (slot != *open_slot_) {
      close_open_window(out);
      // Skipped intervals become explicit empty windows so the pairing
      // hierarchy stays aligned with the time axis.
      for (std::int64_t g = *open_slot_ + 1; g < slot; ++g) {
        WindowedMatrix gap;
        gap.span.first_timestamp = static_cast<double>(g) * cfg_.t;
        gap.span.last_timestamp = static_cast<double>(g + 1) * cfg_.t;
        gap.index = next_index_[0]++;
        complete_window(std::move(gap), out);
      }
      open_window();
      open_slot_ = slot;
      open_.span.first_timestamp = static_cast<double>(slot) * cfg_.t;
      open_.span.last_timestamp = static_cast<double>(slot + 1) * cfg_.t;
    }
  } else if (!open_active_) {
    open_window();
  }

  if (open_.event_count == 0) {
    open_.span.first_ordinal = ordinal_;
    if (cfg_.mode == StreamMode::FixedM) open_.span.first_timestamp = e.timestamp;
  }
  open_.span.last_ordinal = ordinal_;
  if (cfg_.mode == StreamMode::FixedM) open_.span.last_timestamp = e.timestamp;
  open_.matrix.accumulate(e.src, e.dst, e.count);
  open_.event_count += 1;

  ++ordinal_;
  last_timestamp_ = e.timestamp;
  saw_event_ = true;

  if (cfg_.mode == StreamMode::FixedM && open_.event_count == cfg_.m) {
    close_open_window(out);
  }
  return out;
}

std::vector<WindowedMatrix> StreamEngine::flush() {
  std::vector<WindowedMatrix> out;
  if (!open_active_ || open_.event_count == 0) return out;
  open_.partial = true;
  open_.index = next_index_[0]++;
  open_active_ = false;
  rings_[0].push(open_);
  out.push_back(open_);
  // Windows on opposite sides of a partial window are not consecutive, so
  // any unpaired window waiting at any level stops waiting for a sibling.
  for (auto& p : pending_) p.reset();
  return out;
}

StreamEngine::Lookup StreamEngine::level_matrix(std::size_t level,
                                                std::size_t index) const {
  if (level >= cfg_.levels) {
    throw std::invalid_argument("level " + std::to_string(level) +
                                " out of range (levels: 0.." +
                                std::to_string(cfg_.levels - 1) + ")");
  }
  const RingBuffer& ring = rings_[level];
  if (index >= next_index_[level]) return {WindowStatus::Pending, nullptr};
  if (index < ring.evicted()) return {WindowStatus::Evicted, nullptr};
  return {WindowStatus::Ready, &ring.items()[index - ring.evicted()]};
}

std::vector<TrafficStats> StreamEngine::multiscale_stats(std::size_t level) const {
  if (level >= cfg_.levels) {
    throw std::invalid_argument("level " + std::to_string(level) +
                                " out of range (levels: 0.." +
                                std::to_string(cfg_.levels - 1) + ")");
  }
  std::vector<TrafficStats> out;
  out.reserve(rings_[level].items().size());
  for (const auto& w : rings_[level].items()) {
    out.push_back(compute_traffic_stats(w.matrix));
  }
  return out;
}

}  // namespace semiarray
