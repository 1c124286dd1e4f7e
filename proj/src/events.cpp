#include "ppsbm/events.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ppsbm {

namespace {

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

long long EventStream::dyad_index(int i, int j) const {
    if (directed) {
        // Row-major over ordered pairs, skipping the diagonal.
        return static_cast<long long>(i) * (n - 1) + (j > i ? j - 1 : j);
    }
    // Upper-triangular order for i < j.
    long long li = i;
    return li * n - li * (li + 1) / 2 + (j - i - 1);
}

void EventStream::validate() const {
    if (n < 2) throw std::invalid_argument("EventStream: need at least 2 nodes");
    if (!(T > 0.0)) throw std::invalid_argument("EventStream: horizon T must be > 0");
    double prev = 0.0;
    for (std::size_t m = 0; m < events.size(); ++m) {
        const Event& e = events[m];
        if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n)
            throw std::invalid_argument("EventStream: node index out of range");
        if (e.i == e.j) throw std::invalid_argument("EventStream: self-loop");
        if (!directed && e.i >= e.j)
            throw std::invalid_argument("EventStream: undirected events must satisfy i < j");
        if (!(e.t >= 0.0) || e.t >= T)
            throw std::invalid_argument("EventStream: event time outside [0, T)");
        if (e.t < prev) throw std::invalid_argument("EventStream: events not sorted by time");
        prev = e.t;
    }
}

std::vector<long long> EventStream::counts_per_dyad() const {
    std::vector<long long> counts(static_cast<std::size_t>(dyad_count()), 0);
    for (const Event& e : events) ++counts[static_cast<std::size_t>(dyad_index(e.i, e.j))];
    return counts;
}

EventStream parse_event_csv(std::istream& in, const ParseOptions& options) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw std::invalid_argument("empty file");
    ++line_no;
    if (trim(line) != "time,sender,receiver")
        fail_line(line_no, "expected header 'time,sender,receiver'");

    EventStream stream;
    stream.directed = options.directed;

    int max_node = 0;
    double max_time = 0.0;
    std::vector<std::pair<Event, std::size_t>> rows; // event + input order for stable ties

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 3) fail_line(line_no, "expected 3 fields");

        double t;
        {
            std::string f = trim(fields[0]);
            const char* begin = f.data();
            const char* end = begin + f.size();
            auto res = std::from_chars(begin, end, t);
            if (res.ec != std::errc() || res.ptr != end || !std::isfinite(t))
                fail_line(line_no, "bad time '" + f + "'");
        }
        auto parse_id = [&](const std::string& raw, const char* what) {
            std::string f = trim(raw);
            int id = 0;
            const char* begin = f.data();
            const char* end = begin + f.size();
            auto res = std::from_chars(begin, end, id);
            if (res.ec != std::errc() || res.ptr != end || id < 1)
                fail_line(line_no, std::string("bad ") + what + " '" + f + "'");
            return id;
        };
        int sender = parse_id(fields[1], "sender");
        int receiver = parse_id(fields[2], "receiver");
        if (t < 0.0) fail_line(line_no, "negative time");
        if (sender == receiver) fail_line(line_no, "self-loop");
        if (options.T && t >= *options.T)
            fail_line(line_no, "time outside [0, T)");

        Event e{t, sender - 1, receiver - 1};
        if (!options.directed && e.i > e.j) std::swap(e.i, e.j);
        max_node = std::max({max_node, sender, receiver});
        max_time = std::max(max_time, t);
        rows.push_back({e, rows.size()});
    }

    stream.n = options.n ? *options.n : max_node;
    if (options.n && max_node > *options.n)
        throw std::invalid_argument("node id exceeds declared n");
    // Without a declared horizon, place T just past the last event so that
    // every event lies strictly inside [0, T).
    stream.T = options.T ? *options.T
                         : (max_time > 0.0 ? max_time * (1.0 + 1e-9) : 1.0);

    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.first.t != b.first.t) return a.first.t < b.first.t;
        return a.second < b.second;
    });
    stream.events.reserve(rows.size());
    for (const auto& [e, order] : rows) stream.events.push_back(e);

    stream.validate();
    return stream;
}

EventStream parse_event_csv(const std::string& text, const ParseOptions& options) {
    std::istringstream in(text);
    return parse_event_csv(in, options);
}

EventStream read_event_csv(const std::string& path, const ParseOptions& options) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return parse_event_csv(in, options);
}

void write_event_csv(std::ostream& out, const EventStream& stream) {
    out << "time,sender,receiver\n";
    char buf[32];
    for (const Event& e : stream.events) {
        auto res = std::to_chars(buf, buf + sizeof(buf), e.t);
        out.write(buf, res.ptr - buf);
        out << ',' << (e.i + 1) << ',' << (e.j + 1) << '\n';
    }
}

void write_event_csv_file(const std::string& path, const EventStream& stream) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    write_event_csv(out, stream);
}

Matrix aggregate_counts(const EventStream& stream, int depth) {
    if (depth < 0 || depth > 30) throw std::invalid_argument("aggregate_counts: depth out of range");
    int cells = 1 << depth;
    Matrix counts(static_cast<std::size_t>(stream.dyad_count()), static_cast<std::size_t>(cells));
    double scale = cells / stream.T;
    for (const Event& e : stream.events) {
        int cell = std::min(static_cast<int>(e.t * scale), cells - 1);
        counts(static_cast<std::size_t>(stream.dyad_index(e.i, e.j)),
               static_cast<std::size_t>(cell)) += 1.0;
    }
    return counts;
}

} // namespace ppsbm
