#pragma once

#include <string>

namespace levelscreen {

std::string read_file(const std::string& path);

// Whole-file replace via temp file + rename so concurrent readers never see
// a partial write.
void write_file_atomic(const std::string& path, const std::string& content);

// ISO-8601 UTC stamp. Honors SOURCE_DATE_EPOCH so repeated runs with
// identical inputs produce byte-identical output files.
std::string timestamp_utc();

}  // namespace levelscreen
