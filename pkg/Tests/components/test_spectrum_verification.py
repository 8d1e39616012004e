import unittest
from unittest.mock import patch

from mirrorpath.components.spectrum_verification import ISW_TRACE_AT_HALF, SpectrumVerification
from mirrorpath.datamodels.config import SpectrumVerificationConfigEntity, VerificationPipelineConfigEntity


class TestSpectrumVerification(unittest.TestCase):
    def setUp(self):
        self.config = SpectrumVerificationConfigEntity(
            verification_pipeline_config=VerificationPipelineConfigEntity(suite="spectra")
        )
        self.spectrum_verification = SpectrumVerification(spectrum_verification_config=self.config)

    def test_initiate_spectrum_verification(self):
        report = self.spectrum_verification.initiate_spectrum_verification()
        self.assertEqual(report.suite, "spectra")
        self.assertEqual(len(report.checks), 8)
        self.assertTrue(report.passed, [check.to_dict() for check in report.checks if not check.passed])

    def test_well_trace(self):
        self.assertLess(self.spectrum_verification._well_trace(), 1e-6)

    @patch('mirrorpath.components.spectrum_verification.kernel_trace')
    def test_wrong_trace_fails(self, mock_kernel_trace):
        mock_kernel_trace.return_value = 0.0
        self.assertEqual(self.spectrum_verification._well_trace(), ISW_TRACE_AT_HALF)
        report = self.spectrum_verification.initiate_spectrum_verification()
        by_name = {check.name: check for check in report.checks}
        self.assertFalse(by_name["infinite_well_trace"].passed)
        self.assertTrue(by_name["half_oscillator_grid"].passed)


if __name__ == '__main__':
    unittest.main()
