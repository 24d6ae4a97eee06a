namespace pfec { namespace { [[maybe_unused]] int placeholder_reference_spectra = 0; } }
