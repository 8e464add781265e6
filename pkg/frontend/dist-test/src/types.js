/** Wire types mirrored from the workbench service. */
export {};
