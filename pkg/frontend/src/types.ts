export type EventKind =
  | 'responder_message'
  | 'correction_message'
  | 'reminder_notification'
  | 'turn_error'
  | 'turn_done';

export interface TurnEvent {
  session_id: string;
  seq: number;
  kind: EventKind;
  payload: Record<string, unknown>;
}

export type MessageRole = 'responder' | 'correction';

export interface ChatMessage {
  role: MessageRole;
  markdown: string;
  seq: number;
}

export type NotificationStyle = 'popup' | 'modal';

export type DismissalMethod = 'timeout' | 'click';

export interface DismissalRecord {
  text: string;
  method: DismissalMethod;
  dismissedAt: number;
}

export interface Finding {
  rule_id: string;
  impact: string;
  selector: string;
  file: string;
  span: { sl: number; sc: number; el: number; ec: number };
  state: string;
  wcag_tag: string;
  message: string;
}

export interface UiSessionState {
  sessionId: string;
  messages: ChatMessage[];
  pendingReminders: string[];
  dismissals: DismissalRecord[];
  notificationStyle: NotificationStyle;
  findings: Finding[];
  findingsStale: boolean;
  lastSeq: number;
  seqGaps: number[];
  turnActive: boolean;
  disconnected: boolean;
}

export function initialState(sessionId: string): UiSessionState {
  return {
    sessionId,
    messages: [],
    pendingReminders: [],
    dismissals: [],
    notificationStyle: 'popup',
    findings: [],
    findingsStale: false,
    lastSeq: 0,
    seqGaps: [],
    turnActive: false,
    disconnected: false,
  };
}
