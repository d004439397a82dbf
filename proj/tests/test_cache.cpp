// Copyright 2026 The apnlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <apnlab/cache.hpp>
#include <apnlab/trivariate.hpp>

using namespace apnlab;

namespace {

std::string scratch(const std::string& name) {
    const auto d = std::filesystem::temp_directory_path() / ("apnlab-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    const auto p = d / name;
    std::filesystem::remove_all(p);
    return p.string();
}

VBF small_function() { return build_gold(FieldSpec::make(5), 1); }

}  // namespace

TEST(SpaceList, RoundTripAndErrors) {
    const auto F = small_function();
    const auto spaces = extract_spaces(walsh_zeroes(F));
    const auto text = io::spaces_to_text(5, spaces);
    EXPECT_EQ(io::spaces_from_text(text, 5), spaces);
    EXPECT_THROW((void)io::spaces_from_text(text, 6), io::FormatError);
    EXPECT_THROW((void)io::spaces_from_text("garbage\n", 5), io::FormatError);
    // corrupt a vector on the second line
    std::string bad = text;
    const auto line2 = bad.find('\n') + 1;
    bad[line2] = 'x';
    try {
        (void)io::spaces_from_text(bad, 5);
        FAIL();
    } catch (const io::FormatError& e) {
        EXPECT_EQ(e.offset(), line2);
    }
    EXPECT_THROW((void)io::spaces_from_text(text.substr(0, text.size() - 1), 5), io::FormatError);
}

TEST(SpaceCache, StoresAndReuses) {
    const auto dir = scratch("cache");
    io::SpaceCache cache(dir);
    const auto F = small_function();
    const auto a = cache.spaces(F, 1);
    ASSERT_TRUE(std::filesystem::exists(cache.path_for(F)));
    EXPECT_EQ(cache.spaces(F, 1), a);
    // a damaged file is rebuilt
    io::write_file(cache.path_for(F), "apnlab-spaces n=5 count=3\n1 2\n");
    EXPECT_EQ(cache.spaces(F, 1), a);
    EXPECT_EQ(io::spaces_from_text(io::read_file(cache.path_for(F)), 5), a);
    EXPECT_FALSE(io::SpaceCache().enabled());
}

TEST(Checkpoint, ResumeAndValidation) {
    const auto path = scratch("run.ckpt");
    const auto F = small_function();
    const auto spaces = extract_spaces(walsh_zeroes(F));
    std::vector<SourceRecord> recs;
    {
        io::Checkpoint ck(path, F);
        EXPECT_TRUE(ck.records().empty());
        for (std::size_t i = 0; i < 10; ++i) {
            recs.push_back(twist_record(F, spaces, spaces[i]));
            ck.append(recs.back());
        }
    }
    // torn final line
    {
        std::ofstream out(path, std::ios::app);
        out << R"({"space":["1)";
    }
    {
        io::Checkpoint ck(path, F);
        ASSERT_EQ(ck.records().size(), 10u);
        for (const auto& r : recs) {
            const auto& got = ck.records().at(r.space);
            EXPECT_EQ(got.twist, r.twist);
            EXPECT_EQ(got.signature, r.signature);
        }
        ExploreOptions opt;
        opt.known = &ck.records();
        std::size_t fresh = 0;
        opt.on_record = [&](const SourceRecord& r) {
            ++fresh;
            ck.append(r);
        };
        const auto t = explore_regions(F, spaces, opt);
        EXPECT_EQ(fresh, spaces.size() - 10);
        EXPECT_EQ(t.spaces_examined, spaces.size());
    }
    EXPECT_EQ(io::Checkpoint(path, F).records().size(), spaces.size());
    EXPECT_THROW(io::Checkpoint(path, build_gold(FieldSpec::make(5), 2)), InputError);
}
