#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semiarray/assoc_array.hpp"
#include "semiarray/io.hpp"
#include "semiarray/semiring.hpp"
#include "semiarray/traffic.hpp"

namespace semiarray {

enum class StreamMode { FixedM, FixedT };

std::string stream_mode_name(StreamMode m);
StreamMode parse_stream_mode(const std::string& name);

struct StreamConfig {
  StreamMode mode = StreamMode::FixedM;
  std::size_t m = 1;        // events per window, fixed-m mode
  double t = 1.0;           // seconds per window, fixed-t mode
  double dt = 1.0;          // sampling interval; informational (m = t/dt)
  std::size_t levels = 1;   // hierarchy depth L; levels are 0..L-1
  std::size_t buffer_capacity = 8;  // windows retained per level
};

// Half-open coverage of a window: event ordinals are 0-based positions in
// the ingest sequence; timestamps are the window's time bounds in fixed-t
// mode and the observed first/last event times in fixed-m mode.
struct WindowSpan {
  std::size_t first_ordinal = 0;
  std::size_t last_ordinal = 0;  // inclusive; meaningful only if events > 0
  double first_timestamp = 0.0;
  double last_timestamp = 0.0;
};

struct WindowedMatrix {
  std::size_t level = 0;
  std::size_t index = 0;  // per-level sequence number, dense from 0
  AssocArray<NaturalSemiring> matrix{NaturalSemiring{}};
  WindowSpan span;
  std::size_t event_count = 0;
  bool partial = false;
};

// Fixed-capacity circular store of recent windows; the oldest ages off first.
class RingBuffer {
 public:
  explicit RingBuffer(std::size_t capacity) : capacity_(capacity) {}

  void push(WindowedMatrix w) {
    items_.push_back(std::move(w));
    if (items_.size() > capacity_) {
      items_.pop_front();
      ++evicted_;
    }
  }

  std::size_t evicted() const { return evicted_; }
  std::size_t total() const { return evicted_ + items_.size(); }
  const std::deque<WindowedMatrix>& items() const { return items_; }

 private:
  std::size_t capacity_;
  std::deque<WindowedMatrix> items_;
  std::size_t evicted_ = 0;
};

// An out-of-order timestamp in fixed-t mode; echoes the offending event.
class StreamOrderError : public std::runtime_error {
 public:
  explicit StreamOrderError(const std::string& what) : std::runtime_error(what) {}
};

// Matrix-valued stream windows with hierarchical pairwise summation: level-0
// windows close by event count (fixed-m) or time boundary (fixed-t), and two
// consecutive completed level-s windows merge by ⊕ into one level-(s+1)
// window, up to the configured depth. Completed windows land in per-level
// ring buffers and are immutable snapshots.
class StreamEngine {
 public:
  explicit StreamEngine(StreamConfig cfg);

  // Accumulates one event and returns every window the event completed, in
  // completion order (level 0 first, then the cascade upward).
  std::vector<WindowedMatrix> ingest(const StreamEvent& e);

  // Emits the open level-0 window, if it holds any events, flagged partial.
  // A partial window never participates in pairwise summation: its narrower
  // event span would make the summed window lie about its timescale.
  std::vector<WindowedMatrix> flush();

  enum class WindowStatus { Ready, Evicted, Pending };
  struct Lookup {
    WindowStatus status;
    const WindowedMatrix* window;  // non-null iff status == Ready
  };

  // Distinguishes a retained window from one already evicted and from an
  // index not yet produced. Levels outside [0, levels) are an error.
  Lookup level_matrix(std::size_t level, std::size_t index) const;

  // Traffic stats of every retained window at one level, oldest first.
  std::vector<TrafficStats> multiscale_stats(std::size_t level) const;

  const StreamConfig& config() const { return cfg_; }
  std::size_t events_ingested() const { return ordinal_; }

 private:
  void open_window();
  void close_open_window(std::vector<WindowedMatrix>& out);
  void complete_window(WindowedMatrix w, std::vector<WindowedMatrix>& out);

  StreamConfig cfg_;
  std::vector<RingBuffer> rings_;
  std::vector<std::optional<WindowedMatrix>> pending_;
  std::vector<std::size_t> next_index_;

  WindowedMatrix open_;
  bool open_active_ = false;
  std::optional<std::int64_t> open_slot_;  // fixed-t: floor(ts / t) of the open window
  std::size_t ordinal_ = 0;                // events ingested so far
  double last_timestamp_ = 0.0;
  bool saw_event_ = false;
};

}  // namespace semiarray
