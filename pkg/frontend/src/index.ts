export { ApiError, TatamiClient } from "./client.js";
export {
  boardGrid,
  boardLines,
  explainVerdict,
  projectionProgress,
  statusLine,
} from "./board.js";
export type { CellView, ProjectionProgress } from "./board.js";
export type * from "./types.js";
