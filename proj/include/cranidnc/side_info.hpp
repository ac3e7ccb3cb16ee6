#pragma once

// Has/Wants side information and the instant-decodability predicate.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cranidnc/errors.hpp"

namespace cranidnc {

inline constexpr std::size_t kMaxFiles = 64;

/// Set of file indices in [0, 64), stored as a bitmask.
class FileSet {
public:
    constexpr FileSet() = default;
    constexpr explicit FileSet(std::uint64_t bits) : bits_(bits) {}
    FileSet(std::initializer_list<std::size_t> files)
    {
        for (std::size_t f : files) {
            insert(f);
        }
    }

    static FileSet single(std::size_t f)
    {
        FileSet s;
        s.insert(f);
        return s;
    }

    /// {0, ..., count-1}
    static FileSet first(std::size_t count)
    {
        if (count > kMaxFiles) {
            throw std::invalid_argument("at most 64 files are supported");
        }
        return FileSet(count == kMaxFiles ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1);
    }

    void insert(std::size_t f)
    {
        detail::check_index(f, kMaxFiles, "file");
        bits_ |= std::uint64_t{1} << f;
    }
    void erase(std::size_t f)
    {
        detail::check_index(f, kMaxFiles, "file");
        bits_ &= ~(std::uint64_t{1} << f);
    }
    bool contains(std::size_t f) const { return f < kMaxFiles && ((bits_ >> f) & 1U) != 0; }
    bool empty() const { return bits_ == 0; }
    std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    std::uint64_t bits() const { return bits_; }
    bool is_subset_of(FileSet other) const { return (bits_ & ~other.bits_) == 0; }

    /// Lowest member; the set must be nonempty.
    std::size_t lowest() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }

    std::vector<std::size_t> to_vector() const
    {
        std::vector<std::size_t> out;
        for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
            out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
        }
        return out;
    }

    friend FileSet operator&(FileSet a, FileSet b) { return FileSet(a.bits_ & b.bits_); }
    friend FileSet operator|(FileSet a, FileSet b) { return FileSet(a.bits_ | b.bits_); }
    /// Set difference.
    friend FileSet operator-(FileSet a, FileSet b) { return FileSet(a.bits_ & ~b.bits_); }
    bool operator==(const FileSet&) const = default;
    auto operator<=>(const FileSet&) const = default;

private:
    std::uint64_t bits_ = 0;
};

/// The XOR combination carried by one RRB. Never empty.
class EncodedFile {
public:
    explicit EncodedFile(FileSet files) : files_(files)
    {
        if (files_.empty()) {
            throw std::invalid_argument("an encoded file combines at least one file");
        }
    }
    EncodedFile(std::initializer_list<std::size_t> files) : EncodedFile(FileSet(files)) {}

    FileSet files() const { return files_; }
    bool operator==(const EncodedFile&) const = default;

private:
    FileSet files_;
};

class SideInformation {
public:
    SideInformation(std::size_t num_files, std::vector<FileSet> has, std::vector<FileSet> wants)
        : num_files_(num_files), has_(std::move(has)), wants_(std::move(wants))
    {
        if (num_files_ == 0 || num_files_ > kMaxFiles) {
            throw std::invalid_argument("number of files must be in [1, 64]");
        }
        if (has_.size() != wants_.size()) {
            throw MissingData("has and wants must cover the same users");
        }
        const FileSet universe = FileSet::first(num_files_);
        for (std::size_t u = 0; u < has_.size(); ++u) {
            if (!has_[u].is_subset_of(universe) || !wants_[u].is_subset_of(universe)) {
                throw std::invalid_argument("user " + std::to_string(u) + " references a file index >= " +
                                            std::to_string(num_files_));
            }
            if (!(has_[u] & wants_[u]).empty()) {
                throw std::invalid_argument("user " + std::to_string(u) + " wants a file it already has");
            }
        }
    }

    std::size_t num_users() const { return has_.size(); }
    std::size_t num_files() const { return num_files_; }
    FileSet has(std::size_t u) const
    {
        detail::check_index(u, has_.size(), "user");
        return has_[u];
    }
    FileSet wants(std::size_t u) const
    {
        detail::check_index(u, wants_.size(), "user");
        return wants_[u];
    }

    bool operator==(const SideInformation&) const = default;

private:
    std::size_t num_files_;
    std::vector<FileSet> has_;
    std::vector<FileSet> wants_;
};

/// True iff the combination carries exactly one file the user wants and every
/// other file in it is already held, so the XOR can be undone.
inline bool is_instantly_decodable(const EncodedFile& k, std::size_t u, const SideInformation& si)
{
    const FileSet wants = si.wants(u);
    const FileSet files = k.files();
    return (files & wants).size() == 1 && (files - wants).is_subset_of(si.has(u));
}

inline std::size_t decoded_file(const EncodedFile& k, std::size_t u, const SideInformation& si)
{
    if (!is_instantly_decodable(k, u, si)) {
        throw ContractViolation("combination is not instantly decodable for user " + std::to_string(u));
    }
    return (k.files() & si.wants(u)).lowest();
}

} // namespace cranidnc
