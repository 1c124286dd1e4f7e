#ifndef PPSBM_EVENTS_HPP
#define PPSBM_EVENTS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ppsbm/common.hpp"

namespace ppsbm {

/// One timed interaction. Node indices are 0-based internally; data files
/// use 1-based ids.
struct Event {
    double t;
    int i;
    int j;
};

/// A set of timed pairwise interactions on [0, T].
///
/// Invariants (enforced by validate / the parser):
///  - every event time lies in [0, T) and the sequence is sorted
///    nondecreasing (ties allowed, kept in input order);
///  - no self-loops;
///  - undirected streams store each event with i < j.
/// Immutable after construction by convention; fitting code never mutates a
/// stream, so one stream can be shared across concurrent runs.
struct EventStream {
    int n = 0;
    double T = 0.0;
    bool directed = true;
    std::vector<Event> events;

    int event_count() const { return static_cast<int>(events.size()); }

    /// Number of dyads: n(n-1) directed, n(n-1)/2 undirected.
    long long dyad_count() const {
        long long nn = n;
        return directed ? nn * (nn - 1) : nn * (nn - 1) / 2;
    }

    /// Flat dyad index for (i,j), matching the order used by
    /// aggregate_counts rows. Undirected expects i < j.
    long long dyad_index(int i, int j) const;

    /// Throws std::invalid_argument when an invariant is broken.
    void validate() const;

    /// Per-dyad total event counts N_ij(T), indexed by dyad_index.
    std::vector<long long> counts_per_dyad() const;
};

struct ParseOptions {
    bool directed = true;
    std::optional<int> n;       // overrides the inferred node count
    std::optional<double> T;    // overrides the inferred horizon
};

/// Parses the `time,sender,receiver` CSV format. Node ids are 1-based
/// positive integers; times are nonnegative reals. Events are sorted by
/// time (ties keep file order) and canonicalized to i < j in undirected
/// mode. Malformed input throws std::invalid_argument with the line number.
EventStream parse_event_csv(std::istream& in, const ParseOptions& options);
EventStream parse_event_csv(const std::string& text, const ParseOptions& options);
EventStream read_event_csv(const std::string& path, const ParseOptions& options);

/// Writes the stream back out in the same CSV format (1-based ids).
void write_event_csv(std::ostream& out, const EventStream& stream);
void write_event_csv_file(const std::string& path, const EventStream& stream);

/// Counts events per dyad and per cell of the regular partition of [0,T)
/// into 2^depth half-open cells. Row index = dyad_index, column = cell.
/// Summing a row over cells gives N_ij(T).
Matrix aggregate_counts(const EventStream& stream, int depth);

} // namespace ppsbm

#endif
