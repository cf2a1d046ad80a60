#pragma once

#include <array>
#include <string_view>

namespace wrapforge::testkit {

struct Table1Row {
  std::string_view metavar;
  std::string_view galaxy_type;
  std::string_view format; // empty for N/A
};

// Transcribed from the published metavar table.
inline constexpr std::array<Table1Row, 21> kTable1{{
    {"CONTIGS_DB", "data", "anvio_contigs_db"},
    {"PROFILE_DB", "data", "anvio_profile_db"},
    {"PROFILE_DB_OUT", "data", "anvio_profile_db"},
    {"PAN_DB", "data", "anvio_pan_db"},
    {"GENOMES_DB", "data", "anvio_genomes_db"},
    {"COLLECTION", "data", "anvio_collection"},
    {"BIN", "data", "anvio_bin"},
    {"FASTA", "data", "fasta"},
    {"BAM", "data", "bam"},
    {"GENBANK", "data", "genbank"},
    {"TREE", "data", "newick"},
    {"TAXONOMY", "data", "tabular"},
    {"TABULAR", "data", "tabular"},
    {"GFF", "data", "gff"},
    {"VCF", "data", "vcf"},
    {"FILE_PATH", "data", "data"},
    {"DIR_PATH", "data", "directory"},
    {"DIR_PATH_OUT", "data", "directory"},
    {"INT", "integer", ""},
    {"FLOAT", "float", ""},
    {"STRING", "text", ""},
}};

} // namespace wrapforge::testkit
