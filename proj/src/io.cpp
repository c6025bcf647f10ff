#include "weft/io.hpp"

#include <cassert>
#include <charconv>
#include <cinttypes>
#include <cstring>

namespace weft {

// ── byte transport ───────────────────────────────────────────────────────

std::size_t FileSource::read(char* dst, std::size_t n) {
    return std::fread(dst, 1, n, f_);
}

bool FileSource::next_line(std::string_view& out) {
    if (!std::fgets(line_, sizeof line_, f_)) return false;
    std::size_t len = std::strlen(line_);
    if (len + 1 == sizeof line_ && line_[len - 1] != '\n')
        throw DataError("input line exceeds the 64 KiB line limit");
    while (len > 0 && (line_[len - 1] == '\n' || line_[len - 1] == '\r')) --len;
    out = {line_, len};
    return true;
}

std::size_t MemorySource::read(char* dst, std::size_t n) {
    std::size_t take = std::min(n, data_.size() - pos_);
    std::memcpy(dst, data_.data() + pos_, take);
    pos_ += take;
    return take;
}

bool MemorySource::next_line(std::string_view& out) {
    if (pos_ >= data_.size()) return false;
    const char* start = data_.data() + pos_;
    const char* nl =
        static_cast<const char*>(std::memchr(start, '\n', data_.size() - pos_));
    std::size_t len = nl ? static_cast<std::size_t>(nl - start) : data_.size() - pos_;
    pos_ += len + (nl ? 1 : 0);
    if (len > 0 && start[len - 1] == '\r') --len;
    out = {start, len};
    return true;
}

void FileSink::write(const char* data, std::size_t n) {
    if (std::fwrite(data, 1, n, f_) != n) throw DataError("short write to output file");
}

// ── little-endian helpers ────────────────────────────────────────────────

namespace {

void put_u16(ByteSink& s, std::uint16_t v) {
    char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
    s.write(b, 2);
}

void put_u64(ByteSink& s, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    s.write(b, 8);
}

std::uint16_t get_u16(const unsigned char* b) {
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint64_t get_u64(const unsigned char* b) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void read_exact(ByteSource& src, void* dst, std::size_t n, const char* what) {
    if (src.read(static_cast<char*>(dst), n) != n)
        throw DataError(std::string("truncated binary trace: short read in ") + what);
}

// ── flat JSON record scanner ─────────────────────────────────────────────

struct Scanner {
    const char* p;
    const char* end;
    std::uint64_t line;

    [[noreturn]] void fail(const std::string& msg) const {
        throw DataError("trace line " + std::to_string(line) + ": " + msg);
    }

    void ws() {
        while (p < end && (*p == ' ' || *p == '\t')) ++p;
    }

    bool eat(char c) {
        ws();
        if (p < end && *p == c) {
            ++p;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!eat(c)) fail(std::string("expected ") + what);
    }

    std::string_view key() {
        expect('"', "'\"' opening a key");
        const char* s = p;
        while (p < end && *p != '"') {
            if (*p == '\\') fail("escape sequences in keys are not supported");
            ++p;
        }
        if (p >= end) fail("unterminated key");
        std::string_view k{s, static_cast<std::size_t>(p - s)};
        ++p;
        return k;
    }

    // number, true or false
    struct Value {
        std::uint64_t num;
        bool boolean;
    };

    Value value() {
        ws();
        if (p < end && (*p == 't' || *p == 'f')) {
            bool want_true = *p == 't';
            const char* word = want_true ? "true" : "false";
            std::size_t len = want_true ? 4 : 5;
            if (static_cast<std::size_t>(end - p) < len || std::memcmp(p, word, len) != 0)
                fail("malformed literal");
            p += len;
            return {want_true ? 1ull : 0ull, true};
        }
        if (p < end && *p == '-') fail("negative values are not allowed");
        std::uint64_t v = 0;
        auto res = std::from_chars(p, end, v);
        if (res.ec != std::errc() || res.ptr == p) fail("expected a number or true/false");
        p = res.ptr;
        return {v, false};
    }

    bool at_end() {
        ws();
        return p == end;
    }
};

bool blank(std::string_view s) {
    for (char c : s)
        if (c != ' ' && c != '\t') return false;
    return true;
}

} // namespace

// ── JsonTraceReader ──────────────────────────────────────────────────────

JsonTraceReader::JsonTraceReader(ByteSource& src, const PredicateTable& predicates,
                                 TimeModel model)
    : src_(&src), predicates_(&predicates), model_(model) {}

bool JsonTraceReader::next(TimePoint& time, std::span<std::uint8_t> row) {
    assert(row.size() == predicates_->size());
    std::string_view text;
    do {
        if (!src_->next_line(text)) return false;
        ++line_;
    } while (blank(text));

    if (model_ == TimeModel::Discrete) std::fill(row.begin(), row.end(), 0);
    // dense rows hold their previous values unless a key overwrites them

    Scanner sc{text.data(), text.data() + text.size(), line_};
    sc.expect('{', "'{'");
    bool have_time = false;
    if (!sc.eat('}')) {
        do {
            std::string_view k = sc.key();
            sc.expect(':', "':' after key");
            Scanner::Value v = sc.value();
            if (k == "time") {
                if (v.boolean) sc.fail("\"time\" must be an integer");
                time = v.num;
                have_time = true;
            } else if (auto idx = predicates_->find(k)) {
                if (!v.boolean && v.num > 1)
                    sc.fail("predicate values must be 0, 1, true or false");
                row[*idx] = static_cast<std::uint8_t>(v.num);
            } else {
                ++unknown_count_;
                if (first_unknown_.empty()) first_unknown_ = std::string(k);
            }
        } while (sc.eat(','));
        sc.expect('}', "',' or '}'");
    }
    if (!sc.at_end()) sc.fail("trailing characters after record");
    if (!have_time) sc.fail("record is missing \"time\"");
    return true;
}

// ── BinaryTraceReader ────────────────────────────────────────────────────

BinaryTraceReader::BinaryTraceReader(ByteSource& src, const PredicateTable& predicates,
                                     TimeModel model)
    : src_(&src), model_(model) {
    unsigned char head[9];
    read_exact(src, head, sizeof head, "header");
    if (std::memcmp(head, "LRVB", 4) != 0)
        throw DataError("not a binary trace (bad magic)");
    std::uint16_t version = get_u16(head + 4);
    if (version != kBinaryFormatVersion)
        throw DataError("unsupported binary trace version " + std::to_string(version));
    std::uint8_t mode = head[6];
    if (mode > 1) throw DataError("bad mode byte in binary trace header");
    if (static_cast<TimeModel>(mode) != model_)
        throw DataError(std::string("trace was recorded for ") +
                        (mode ? "dense" : "discrete") + " time but the monitor is " +
                        (model_ == TimeModel::Dense ? "dense" : "discrete"));
    std::uint16_t count = get_u16(head + 7);
    names_.reserve(count);
    target_.reserve(count);
    for (std::uint16_t i = 0; i < count; ++i) {
        unsigned char lenb[2];
        read_exact(src, lenb, 2, "predicate name length");
        std::uint16_t len = get_u16(lenb);
        std::string name(len, '\0');
        if (len) read_exact(src, name.data(), len, "predicate name");
        if (auto idx = predicates.find(name)) {
            target_.push_back(static_cast<std::int32_t>(*idx));
        } else {
            target_.push_back(-1);
            ++unknown_count_;
            if (first_unknown_.empty()) first_unknown_ = name;
        }
        names_.push_back(std::move(name));
    }
    packed_.resize((names_.size() + 7) / 8);
}

bool BinaryTraceReader::next(TimePoint& time, std::span<std::uint8_t> row) {
    unsigned char tb[8];
    std::size_t got = src_->read(reinterpret_cast<char*>(tb), 8);
    if (got == 0) return false;
    if (got != 8) throw DataError("truncated binary trace: short read in timestamp");
    time = get_u64(tb);
    if (!packed_.empty())
        read_exact(*src_, packed_.data(), packed_.size(), "record bitfield");
    if (model_ == TimeModel::Discrete) std::fill(row.begin(), row.end(), 0);
    for (std::size_t i = 0; i < names_.size(); ++i) {
        std::int32_t t = target_[i];
        if (t < 0) continue;
        row[static_cast<std::size_t>(t)] = (packed_[i >> 3] >> (i & 7)) & 1;
    }
    return true;
}

// ── trace writers ────────────────────────────────────────────────────────

void JsonTraceWriter::record(TimePoint time, std::span<const std::uint8_t> row) {
    assert(row.size() == names_.size());
    buf_.clear();
    buf_ += "{\"time\":";
    buf_ += std::to_string(time);
    for (std::size_t i = 0; i < names_.size(); ++i) {
        buf_ += ",\"";
        buf_ += names_[i];
        buf_ += row[i] ? "\":1" : "\":0";
    }
    buf_ += "}\n";
    sink_->write(buf_);
}

BinaryTraceWriter::BinaryTraceWriter(ByteSink& sink, std::vector<std::string> predicates,
                                     TimeModel model)
    : sink_(&sink), npreds_(predicates.size()), packed_((predicates.size() + 7) / 8) {
    sink_->write("LRVB", 4);
    put_u16(*sink_, kBinaryFormatVersion);
    char mode = model == TimeModel::Dense ? 1 : 0;
    sink_->write(&mode, 1);
    put_u16(*sink_, static_cast<std::uint16_t>(predicates.size()));
    for (const std::string& name : predicates) {
        put_u16(*sink_, static_cast<std::uint16_t>(name.size()));
        sink_->write(name.data(), name.size());
    }
}

void BinaryTraceWriter::record(TimePoint time, std::span<const std::uint8_t> row) {
    assert(row.size() == npreds_);
    put_u64(*sink_, time);
    std::fill(packed_.begin(), packed_.end(), 0);
    for (std::size_t i = 0; i < npreds_; ++i)
        if (row[i]) packed_[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7));
    if (!packed_.empty())
        sink_->write(reinterpret_cast<const char*>(packed_.data()), packed_.size());
}

// ── verdict writers ──────────────────────────────────────────────────────

void DiscreteVerdictWriter::row(TimePoint time, std::span<const std::uint8_t> verdicts) {
    buf_.clear();
    buf_ += std::to_string(time);
    for (std::uint8_t v : verdicts) {
        buf_ += v ? ",1" : ",0";
    }
    buf_ += '\n';
    sink_->write(buf_);
}

void DenseVerdictWriter::interval(std::uint32_t property, TimePoint begin, TimePoint end) {
    Interval& open = open_[property];
    if (open.begin == open.end) {
        open = {begin, end};
    } else if (open.end == begin) { // continues across a segment boundary
        open.end = end;
    } else {
        emit(property, open);
        open = {begin, end};
    }
}

void DenseVerdictWriter::finish() {
    for (std::size_t k = 0; k < open_.size(); ++k) {
        if (open_[k].begin != open_[k].end) {
            emit(static_cast<std::uint32_t>(k), open_[k]);
            open_[k] = {0, 0};
        }
    }
}

void DenseVerdictWriter::emit(std::uint32_t property, const Interval& iv) {
    char buf[96];
    int n = std::snprintf(buf, sizeof buf, "{\"property\":%u,\"begin\":%" PRIu64 ",\"end\":%" PRIu64 "}\n",
                          property + 1, iv.begin, iv.end);
    sink_->write(buf, static_cast<std::size_t>(n));
}

} // namespace weft
