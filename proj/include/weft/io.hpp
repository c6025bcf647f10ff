#pragma once

// ============================================================================
//  io -- trace decoding and verdict encoding
//
//  Two trace encodings carry identical content:
//
//  JSON lines: one flat object per line, {"time": t, "p": 1, "q": false}.
//  Predicate values are 0/1 or true/false.  A predicate absent from a record
//  is false at that instant in discrete mode and holds its previous value in
//  dense mode.  Unknown predicate names are ignored and counted.  The
//  scanner is hand-rolled and reuses fixed buffers so a decode loop performs
//  no heap allocation.
//
//  Binary: header "LRVB", u16 version, u8 mode (0 discrete, 1 dense), u16
//  predicate count, then per predicate a u16 length and name bytes; each
//  record is a u64 timestamp and ceil(n/8) bitfield bytes, bit i of byte
//  i/8 carrying predicate i, least significant bit first.  Integers are
//  little-endian.
//
//  Readers emit rows in the order of the monitor's predicate table, applying
//  the absence rule, so both encodings feed the engine identically.
//
//  Verdict output: discrete is one CSV row "t,v1,...,vm" per step; dense is
//  one JSON object {"property": k, "begin": b, "end": e} per maximal true
//  run, with 1-based property indices, emitted when the run closes (runs
//  still open when the trace ends are flushed at the final timestamp).
// ============================================================================

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weft/compiler.hpp"
#include "weft/engine.hpp"
#include "weft/errors.hpp"
#include "weft/formula.hpp"

namespace weft {

inline constexpr std::uint16_t kBinaryFormatVersion = 1;

// ── byte transport ───────────────────────────────────────────────────────

class ByteSource {
public:
    virtual ~ByteSource() = default;
    virtual std::size_t read(char* dst, std::size_t n) = 0;
    // View of the next line without its terminator; valid until the next
    // call.  False at end of input.
    virtual bool next_line(std::string_view& out) = 0;
};

class FileSource : public ByteSource {
public:
    explicit FileSource(std::FILE* f) : f_(f) {}
    std::size_t read(char* dst, std::size_t n) override;
    bool next_line(std::string_view& out) override;

private:
    std::FILE* f_;
    char line_[1 << 16]; // longer lines are a data error
};

class MemorySource : public ByteSource {
public:
    explicit MemorySource(std::span<const char> data) : data_(data) {}
    std::size_t read(char* dst, std::size_t n) override;
    bool next_line(std::string_view& out) override;

private:
    std::span<const char> data_;
    std::size_t pos_ = 0;
};

class ByteSink {
public:
    virtual ~ByteSink() = default;
    virtual void write(const char* data, std::size_t n) = 0;
    void write(std::string_view s) { write(s.data(), s.size()); }
};

class FileSink : public ByteSink {
public:
    explicit FileSink(std::FILE* f) : f_(f) {}
    void write(const char* data, std::size_t n) override;

private:
    std::FILE* f_;
};

class MemorySink : public ByteSink {
public:
    explicit MemorySink(std::vector<char>& out) : out_(&out) {}
    void write(const char* data, std::size_t n) override { out_->insert(out_->end(), data, data + n); }

private:
    std::vector<char>* out_;
};

// ── trace readers ────────────────────────────────────────────────────────

// Common shape: next() decodes one record into a row ordered like the
// monitor's predicate table and returns false at end of input.
class JsonTraceReader {
public:
    JsonTraceReader(ByteSource& src, const PredicateTable& predicates, TimeModel model);

    bool next(TimePoint& time, std::span<std::uint8_t> row);

    std::uint64_t unknown_count() const { return unknown_count_; }
    const std::string& first_unknown() const { return first_unknown_; }
    std::uint64_t line() const { return line_; }

private:
    ByteSource* src_;
    const PredicateTable* predicates_;
    TimeModel model_;
    std::uint64_t line_ = 0;
    std::uint64_t unknown_count_ = 0;
    std::string first_unknown_;
};

class BinaryTraceReader {
public:
    // Reads the header eagerly; mode must match the monitor's time model.
    BinaryTraceReader(ByteSource& src, const PredicateTable& predicates, TimeModel model);

    bool next(TimePoint& time, std::span<std::uint8_t> row);

    std::uint64_t unknown_count() const { return unknown_count_; }
    const std::string& first_unknown() const { return first_unknown_; }
    const std::vector<std::string>& file_predicates() const { return names_; }

private:
    ByteSource* src_;
    TimeModel model_;
    std::vector<std::string> names_;
    std::vector<std::int32_t> target_; // file index -> monitor index, -1 unknown
    std::vector<std::uint8_t> packed_; // one record's bitfield bytes
    std::uint64_t unknown_count_ = 0;
    std::string first_unknown_;
};

// ── trace writers ────────────────────────────────────────────────────────

class JsonTraceWriter {
public:
    JsonTraceWriter(ByteSink& sink, std::vector<std::string> predicates)
        : sink_(&sink), names_(std::move(predicates)) {}

    // Writes every predicate explicitly.
    void record(TimePoint time, std::span<const std::uint8_t> row);

private:
    ByteSink* sink_;
    std::vector<std::string> names_;
    std::string buf_;
};

class BinaryTraceWriter {
public:
    BinaryTraceWriter(ByteSink& sink, std::vector<std::string> predicates, TimeModel model);

    void record(TimePoint time, std::span<const std::uint8_t> row);

private:
    ByteSink* sink_;
    std::size_t npreds_;
    std::vector<std::uint8_t> packed_;
};

// ── verdict writers ──────────────────────────────────────────────────────

class DiscreteVerdictWriter {
public:
    explicit DiscreteVerdictWriter(ByteSink& sink) : sink_(&sink) {}
    void row(TimePoint time, std::span<const std::uint8_t> verdicts);

private:
    ByteSink* sink_;
    std::string buf_;
};

// Coalesces the segment-clipped intervals the engine emits into maximal
// runs across segments; finish() flushes runs still open at stream end.
class DenseVerdictWriter : public VerdictSink {
public:
    DenseVerdictWriter(ByteSink& sink, std::size_t property_count)
        : sink_(&sink), open_(property_count, Interval{0, 0}) {}

    void interval(std::uint32_t property, TimePoint begin, TimePoint end) override;
    void finish();

private:
    ByteSink* sink_;
    std::vector<Interval> open_; // begin == end means no open run

    void emit(std::uint32_t property, const Interval& iv);
};

// ── feeding loops ────────────────────────────────────────────────────────

struct FeedResult {
    std::uint64_t records = 0;
    std::uint64_t unknown_predicates = 0;
    std::string first_unknown;
    TimePoint horizon = 0; // dense: final timestamp; discrete: last step + 1
};

// Runs a discrete trace through the session, one step per record, optionally
// writing verdict rows.  Reader must follow the readers' next() shape.
template <class Reader>
FeedResult feed_discrete(Reader& reader, EvalSession& session, DiscreteVerdictWriter* out) {
    std::vector<std::uint8_t> row(session.monitor().predicates().size(), 0);
    FeedResult res;
    TimePoint t = 0;
    while (reader.next(t, row)) {
        std::span<const std::uint8_t> verdicts = session.step({t, row});
        if (out) out->row(t, verdicts);
        ++res.records;
    }
    res.unknown_predicates = reader.unknown_count();
    res.first_unknown = reader.first_unknown();
    res.horizon = session.now();
    return res;
}

// Runs a dense trace through the session.  The first record must sit at
// t = 0; each later record at time T closes the segment [previous T, T) with
// the previous record's values, and the last record's time is the horizon.
template <class Reader>
FeedResult feed_dense(Reader& reader, EvalSession& session, VerdictSink& sink) {
    const std::size_t n = session.monitor().predicates().size();
    std::vector<std::uint8_t> cur(n, 0), held(n, 0);
    FeedResult res;
    TimePoint t = 0;
    bool first = true;
    while (reader.next(t, cur)) {
        ++res.records;
        if (first) {
            if (t != 0)
                throw DataError("dense trace must start at t=0, found t=" + std::to_string(t));
            first = false;
        } else {
            session.advance(t, held, sink);
        }
        std::copy(cur.begin(), cur.end(), held.begin());
        res.horizon = t;
    }
    res.unknown_predicates = reader.unknown_count();
    res.first_unknown = reader.first_unknown();
    return res;
}

} // namespace weft
